use super::basis::invariant_basis;
use super::hsop::{certify_over, complete_intersection_series, Hsop};
use super::secondary::SecondaryGenerators;
use crate::error::{Error, Result};
use crate::group::{MatrixGroup, DEFAULT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmVerdict {
    /// Agreement through the window; a truncated check, not a proof.
    ConsistentWithFree,
    NotFree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmProbe {
    pub window: u32,
    /// Coefficients of `sum_j t^{e_j}` over the secondary degrees.
    pub secondary_series: Vec<i128>,
    /// Coefficients of `H(t) prod_i (1 - t^{d_i})`.
    pub product_series: Vec<i128>,
    pub verdict: CmVerdict,
}

/// Compares `sum_j t^{e_j}` with `H(t) prod (1 - t^{d_i})` through degree
/// `sum (d_i - 1) + slack`; `slack` defaults to `max d_i`. Equality holds
/// when the invariants are free over the parameter subalgebra.
pub fn cm_probe(g: &MatrixGroup, h: &Hsop, s: &SecondaryGenerators, slack: Option<u32>) -> Result<CmProbe> {
    let field = g.ring().fraction_field();
    let cert = certify_over(g, &h.polys, field, DEFAULT_CAP.max(g.order()))?;
    if !cert.passed() {
        return Err(Error::UnverifiedHsop(field));
    }
    let slack = slack.unwrap_or_else(|| h.degrees.iter().copied().max().unwrap_or(0));
    let window = h.top_degree() + slack;
    let len = window as usize + 1;
    let hilbert = (0..=window)
        .map(|d| invariant_basis(g, d).map(|b| b.dimension() as i128))
        .collect::<Result<Vec<_>>>()?;
    // H(t) * prod(1 - t^{d_i}) = H(t) * (1-t)^n * [prod(1 - t^{d_i}) / (1-t)^n]
    let factor = complete_intersection_series(0, &h.degrees, window);
    let product_series: Vec<i128> = (0..len)
        .map(|k| (0..=k).map(|i| hilbert[i] * factor[k - i]).sum())
        .collect();
    let mut secondary_series = vec![0i128; len];
    for (e, _) in &s.gens {
        if let Some(c) = secondary_series.get_mut(*e as usize) {
            *c += 1;
        }
    }
    let verdict = if product_series == secondary_series {
        CmVerdict::ConsistentWithFree
    } else {
        CmVerdict::NotFree
    };
    Ok(CmProbe {
        window,
        secondary_series,
        product_series,
        verdict,
    })
}
