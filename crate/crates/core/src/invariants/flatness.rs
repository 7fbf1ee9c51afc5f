use super::basis::invariant_basis;
use crate::error::{Error, Result};
use crate::group::{reduce_mod_p, MatrixGroup};
use crate::linalg::{IncrementalEchelon, Prime, RingDescriptor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularDimension {
    pub prime: u64,
    pub reduced_order: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessRow {
    pub degree: u32,
    pub lattice_rank: usize,
    pub rational_dimension: usize,
    pub modular: Vec<ModularDimension>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessReport {
    pub max_degree: u32,
    pub rows: Vec<FlatnessRow>,
}

/// A degree and prime where the reduced invariants differ in dimension
/// from the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discrepancy {
    pub degree: u32,
    pub prime: u64,
    pub lattice_rank: usize,
    pub modular_dimension: usize,
}

impl FlatnessReport {
    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        self.rows
            .iter()
            .flat_map(|row| {
                row.modular
                    .iter()
                    .filter(|m| m.dimension != row.lattice_rank)
                    .map(move |m| Discrepancy {
                        degree: row.degree,
                        prime: m.prime,
                        lattice_rank: row.lattice_rank,
                        modular_dimension: m.dimension,
                    })
            })
        .collect()
    }
}

/// Compares the integer invariant lattice with the rational invariants in
/// each degree `0 ..= max_degree` (they must agree after tensoring with Q)
/// and reports the invariant dimensions of the reductions mod each prime,
/// which may exceed the lattice rank.
pub fn flatness_check(g: &MatrixGroup, max_degree: u32, primes: &[Prime], cap: usize) -> Result<FlatnessReport> {
    RingDescriptor::Integers.ensure_same(g.ring())?;
    let rational = g.convert(RingDescriptor::Rationals, cap)?;
    let reduced = primes
        .iter()
        .map(|&p| reduce_mod_p(g, p, cap))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let lattice = invariant_basis(g, d)?;
        let over_q = invariant_basis(&rational, d)?;
        let mut span = IncrementalEchelon::new(RingDescriptor::Rationals, lattice.component.len());
        for v in lattice.integer_vectors() {
            span.insert_int(v);
        }
        let spans_match = span.rank() == lattice.dimension()
            && span.rank() == over_q.dimension()
            && over_q.vectors.iter().all(|v| span.contains(v));
        if !spans_match {
            return Err(Error::FlatnessViolation(d));
        }
        let modular = reduced
            .iter()
            .map(|r| {
                let p = r.group.ring().characteristic();
                invariant_basis(&r.group, d).map(|b| ModularDimension {
                    prime: p,
                    reduced_order: r.reduced_order,
                    dimension: b.dimension(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(FlatnessRow {
            degree: d,
            lattice_rank: lattice.dimension(),
            rational_dimension: over_q.dimension(),
            modular,
        });
    }
    Ok(FlatnessReport { max_degree, rows })
}
