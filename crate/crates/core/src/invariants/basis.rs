use num_bigint::BigInt;

use crate::error::Result;
use crate::group::MatrixGroup;
use crate::linalg::{integer_kernel, nullspace, ExactMatrix, RingDescriptor, Scalar};
use crate::poly::{action_matrix, monomial_basis, DegreeComponent, Polynomial};

/// Basis of the degree-`d` invariants `(S^G)_d`: a vector-space basis over
/// a field, a basis of the saturated invariant lattice over Z.
#[derive(Debug, Clone)]
pub struct InvariantBasis {
    pub degree: u32,
    pub ring: RingDescriptor,
    /// Coordinates over the monomial basis of `component`.
    pub vectors: Vec<Vec<Scalar>>,
    pub polynomials: Vec<Polynomial>,
    pub component: DegreeComponent,
}

impl InvariantBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub(crate) fn integer_vectors(&self) -> Vec<Vec<BigInt>> {
        self.vectors.iter().map(|v| to_bigints(v)).collect()
    }
}

pub(crate) fn to_bigints(v: &[Scalar]) -> Vec<BigInt> {
    v.iter()
        .map(|s| match s {
            Scalar::Int(x) => x.clone(),
            other => panic!("expected an integer coordinate, got {}", other.ring()),
        })
        .collect()
}

/// Invariants of degree `d` as the kernel of `f -> (sigma(f) - f)_sigma`.
///
/// Invariance under a generating set implies invariance under the whole
/// group, so the blocks `action_matrix(sigma^{-1}, d) - I` are stacked for
/// the generators only; the kernel is the same as for all elements.
pub fn invariant_basis(g: &MatrixGroup, d: u32) -> Result<InvariantBasis> {
    let ring = g.ring();
    let n = g.dimension();
    let component = monomial_basis(n, d);
    let size = component.len();
    let identity = ExactMatrix::identity(ring, size);
    let mut blocks = Vec::new();
    for gen in g.generators() {
        if gen.is_identity() {
            continue;
        }
        let inv = crate::linalg::inverse(gen)?;
        blocks.push(action_matrix(&inv, d)?.sub(&identity)?);
    }
    let stacked = ExactMatrix::vstack(ring, size, &blocks)?;
    let vectors: Vec<Vec<Scalar>> = match ring {
        RingDescriptor::Integers => integer_kernel(&stacked)?
            .into_iter()
            .map(|v| v.iter().map(|x| Scalar::Int(x.clone())).collect())
            .collect(),
        _ => nullspace(&stacked)?,
    };
    let polynomials = vectors
        .iter()
        .map(|v| Polynomial::from_coordinates(ring, &component, v))
        .collect();
    Ok(InvariantBasis {
        degree: d,
        ring,
        vectors,
        polynomials,
        component,
    })
}

/// Lazily computed invariant bases for consecutive degrees of one group.
pub struct InvariantSpaces<'g> {
    group: &'g MatrixGroup,
    bases: Vec<Option<InvariantBasis>>,
}

impl<'g> InvariantSpaces<'g> {
    pub fn new(group: &'g MatrixGroup) -> Self {
        InvariantSpaces {
            group,
            bases: Vec::new(),
        }
    }

    pub fn group(&self) -> &'g MatrixGroup {
        self.group
    }

    pub fn get(&mut self, d: u32) -> Result<&InvariantBasis> {
        let i = d as usize;
        if self.bases.len() <= i {
            self.bases.resize(i + 1, None);
        }
        if self.bases[i].is_none() {
            self.bases[i] = Some(invariant_basis(self.group, d)?);
        }
        Ok(self.bases[i].as_ref().expect("just computed"))
    }
}
