use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, ExactMatrix, Prime, RingDescriptor};
use crate::poly::{substitute_linear, Polynomial};

/// Default bound on the number of elements produced by [`close_group`].
pub const DEFAULT_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    matrix: ExactMatrix,
    inverse: ExactMatrix,
}

impl GroupElement {
    /// Validates invertibility over the matrix's ring (unit determinant
    /// over Z) and caches the inverse.
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        let ring = matrix.ring();
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("group elements must be square".into()));
        }
        let det = determinant(&matrix)?;
        if det.inverse().is_none() {
            return Err(Error::NotInvertibleOverRing(ring));
        }
        let inverse = inverse(&matrix)?;
        Ok(GroupElement { matrix, inverse })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &ExactMatrix {
        &self.inverse
    }
}

/// A finite subgroup of `GL_n(R)`, stored as its full element list.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    ring: RingDescriptor,
    n: usize,
    generators: Vec<ExactMatrix>,
    elements: Vec<GroupElement>,
    index: HashMap<ExactMatrix, usize>,
}

impl MatrixGroup {
    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    /// Elements in closure order; the identity comes first.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        self.index.contains_key(m)
    }

    /// The bound `max(|G|, n(|G| - 1))` on the degrees of algebra generators.
    pub fn degree_bound(&self) -> u32 {
        let g = self.order() as u32;
        g.max(self.n as u32 * (g - 1))
    }

    /// Checks that products and inverses of all pairs stay inside the
    /// element list.
    pub fn audit(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&a.inverse)
                && self
                    .elements
                    .iter()
                    .all(|b| a.matrix.mul(&b.matrix).map(|p| self.contains(&p)).unwrap_or(false))
        })
    }

    /// Image of the group under a change of coefficient ring
    /// (Z -> Q, Z -> F_p, Q -> F_p), re-closed from the mapped generators.
    pub fn convert(&self, target: RingDescriptor, cap: usize) -> Result<MatrixGroup> {
        if target == self.ring {
            return Ok(self.clone());
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.convert(target))
            .collect::<Result<Vec<_>>>()?;
        close_group(target, self.n, &gens, cap)
    }
}

/// Smallest set of matrices containing the identity and `generators` that is
/// closed under multiplication.
///
/// Elements are discovered breadth first from the identity, multiplying on
/// the right by the generators in the given order.
pub fn close_group(
    ring: RingDescriptor,
    n: usize,
    generators: &[ExactMatrix],
    cap: usize,
) -> Result<MatrixGroup> {
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be positive".into()));
    }
    for g in generators {
        ring.ensure_same(g.ring())?;
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, expected {n}x{n}",
                g.rows(),
                g.cols()
            )));
        }
        GroupElement::new(g.clone())?;
    }
    let identity = ExactMatrix::identity(ring, n);
    let mut found = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let next = found[i].mul(g)?;
            if index.contains_key(&next) {
                continue;
            }
            if found.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            index.insert(next.clone(), found.len());
            queue.push_back(found.len());
            found.push(next);
        }
    }
    let elements = found
        .into_iter()
        .map(GroupElement::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixGroup {
        ring,
        n,
        generators: generators.to_vec(),
        elements,
        index,
    })
}

/// `g(f) = f(g^{-1} x)`, a left action of the group on polynomials.
pub fn act(g: &GroupElement, f: &Polynomial) -> Result<Polynomial> {
    substitute_linear(f, g.inverse())
}

/// Result of reducing an integer group modulo a prime.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub group: MatrixGroup,
    pub original_order: usize,
    pub reduced_order: usize,
}

/// Entrywise reduction of an integer group mod `p`, re-closed.
pub fn reduce_mod_p(g: &MatrixGroup, p: Prime, cap: usize) -> Result<Reduction> {
    RingDescriptor::Integers.ensure_same(g.ring())?;
    let group = g.convert(RingDescriptor::PrimeField(p), cap)?;
    Ok(Reduction {
        original_order: g.order(),
        reduced_order: group.order(),
        group,
    })
}
