use super::basis::InvariantSpaces;
use super::complement::extend_span;
use super::hsop::{certify_over, Hsop};
use crate::error::{Error, Result};
use crate::group::{MatrixGroup, DEFAULT_CAP};
use crate::poly::Polynomial;

/// Module generators of `S^G` over `A = R[f_1, ..., f_n]`.
#[derive(Debug, Clone)]
pub struct SecondaryGenerators {
    pub hsop: Hsop,
    pub gens: Vec<(u32, Polynomial)>,
    /// Largest degree of a generator.
    pub max_degree: u32,
    /// `sum_i (deg f_i - 1)`, the last degree searched.
    pub bound: u32,
}

impl SecondaryGenerators {
    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|(d, _)| *d).collect()
    }
}

/// Secondary generators in degrees `0 ..= sum (deg f_i - 1)`.
///
/// The `A`-span in degree `d` is `sum_i f_i M_{d - deg f_i}`; new generators
/// complete it to `(S^G)_d`. The parameters must pass a certificate over the
/// fraction field of the group's ring.
pub fn secondary_generators(g: &MatrixGroup, h: &Hsop) -> Result<SecondaryGenerators> {
    let ring = g.ring();
    for f in &h.polys {
        ring.ensure_same(f.ring())?;
    }
    let field = ring.fraction_field();
    let cert = certify_over(g, &h.polys, field, DEFAULT_CAP.max(g.order()))?;
    if !cert.passed() {
        return Err(Error::UnverifiedHsop(field));
    }

    let bound = h.top_degree();
    let mut spaces = InvariantSpaces::new(g);
    let mut pieces: Vec<Vec<Polynomial>> = Vec::new();
    let mut gens = Vec::new();
    for d in 0..=bound {
        let inv = spaces.get(d)?;
        let mut products = Vec::new();
        for (f, &fd) in h.polys.iter().zip(&h.degrees) {
            if fd <= d {
                products.extend(pieces[(d - fd) as usize].iter().map(|b| f.mul_unchecked(b)));
            }
        }
        let (fresh, basis) = extend_span(inv, products)?;
        gens.extend(fresh.into_iter().map(|p| (d, p)));
        pieces.push(basis);
    }
    let max_degree = gens.last().map_or(0, |(d, _)| *d);
    Ok(SecondaryGenerators {
        hsop: h.clone(),
        gens,
        max_degree,
        bound,
    })
}
