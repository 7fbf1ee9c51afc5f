use super::basis::InvariantSpaces;
use super::complement::extend_span;
use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::linalg::RingDescriptor;
use crate::poly::Polynomial;

/// Algebra generators of `S^G` found degree by degree.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub ring: RingDescriptor,
    /// `(degree, generator)` pairs with nondecreasing degrees.
    pub generators: Vec<(u32, Polynomial)>,
    /// Largest generator degree, 0 if there are none.
    pub beta: u32,
    pub bound: u32,
    /// Last degree searched.
    pub searched_through: u32,
    /// Largest `d` such that degrees `beta + 1 ..= d` produced nothing new.
    pub sweep_clean_through: u32,
    pub warnings: Vec<String>,
}

impl GeneratorSet {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|(d, _)| *d).collect()
    }

    /// True when a warning was raised about generators at or past the bound.
    pub fn bound_warning(&self) -> bool {
        !self.warnings.is_empty()
    }
}

/// Searches degrees `1 ..= bound + extra_sweep` for algebra generators.
///
/// `B_d`, the degree-`d` part of the algebra generated by the generators of
/// degree below `d`, is spanned by products `gen * B_{d - deg gen}`. New
/// generators complete it to `(S^G)_d`: a complement over a field, one
/// cokernel generator per invariant factor different from one over Z.
/// The default bound is `max(|G|, n(|G| - 1))`.
pub fn algebra_generators(g: &MatrixGroup, bound: Option<u32>, extra_sweep: u32) -> Result<GeneratorSet> {
    let default_bound = g.degree_bound();
    let bound = bound.unwrap_or(default_bound);
    if bound == 0 {
        return Err(Error::InvalidArgument("degree bound must be at least 1".into()));
    }
    let ring = g.ring();
    let n = g.dimension();
    let last = bound + extra_sweep;
    let mut spaces = InvariantSpaces::new(g);
    let mut pieces = vec![vec![Polynomial::one(ring, n)]];
    let mut generators: Vec<(u32, Polynomial)> = Vec::new();
    let mut new_at = Vec::new();

    for d in 1..=last {
        let inv = spaces.get(d)?;
        let mut products = Vec::new();
        for (deg, gen) in &generators {
            for b in &pieces[(d - deg) as usize] {
                products.push(gen.mul_unchecked(b));
            }
        }
        let (fresh, basis) = extend_span(inv, products)?;
        if !fresh.is_empty() {
            new_at.push(d);
        }
        generators.extend(fresh.into_iter().map(|p| (d, p)));
        pieces.push(basis);
    }

    let beta = generators.last().map_or(0, |(d, _)| *d);
    let sweep_clean_through = if beta < last { last } else { beta };
    let mut warnings = Vec::new();
    if let Some(&d) = new_at.iter().find(|&&d| d > bound) {
        warnings.push(format!("new generators found in degree {d}, beyond the bound {bound}"));
    } else if new_at.contains(&bound)
        && extra_sweep == 0
        && (ring == RingDescriptor::Integers || bound < default_bound)
    {
        warnings.push(format!(
            "new generators appear at the bound degree {bound}; rerun with --extra-sweep to check higher degrees"
        ));
    }
    Ok(GeneratorSet {
        ring,
        generators,
        beta,
        bound,
        searched_through: last,
        sweep_clean_through,
        warnings,
    })
}
