//! Choosing new generators: complements of a subspace over a field and
//! generators of a lattice cokernel over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::basis::{to_bigints, InvariantBasis};
use crate::error::Result;
use crate::linalg::{inverse, lattice_basis, snf, ExactMatrix, IncrementalEchelon, RingDescriptor, Scalar};
use crate::poly::{DegreeComponent, Polynomial};

/// Given products spanning a submodule of `(S^G)_d`, returns the new
/// elements needed to reach all of `inv`, and a basis of the enlarged span.
pub(crate) fn extend_span(inv: &InvariantBasis, products: Vec<Polynomial>) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    let ring = inv.ring;
    let component = &inv.component;
    if ring == RingDescriptor::Integers {
        let sub: Vec<Vec<BigInt>> = products
            .iter()
            .map(|p| p.coordinates(component).map(|v| to_bigints(&v)))
            .collect::<Result<_>>()?;
        let fresh_vectors = lattice_complement(&inv.integer_vectors(), &sub);
        let fresh = fresh_vectors.iter().map(|v| int_polynomial(component, v)).collect();
        let mut all = sub;
        all.extend(fresh_vectors);
        let basis = lattice_basis(&all, component.len())
            .iter()
            .map(|v| int_polynomial(component, v))
            .collect();
        Ok((fresh, basis))
    } else {
        let sub: Vec<Vec<Scalar>> = products
            .iter()
            .map(|p| p.coordinates(component))
            .collect::<Result<_>>()?;
        let (chosen, independent) = field_complement(ring, component.len(), &inv.vectors, &sub);
        let fresh: Vec<Polynomial> = chosen.iter().map(|&i| inv.polynomials[i].clone()).collect();
        let mut basis: Vec<Polynomial> = independent.into_iter().map(|i| products[i].clone()).collect();
        basis.extend(fresh.iter().cloned());
        Ok((fresh, basis))
    }
}

fn int_polynomial(component: &DegreeComponent, v: &[BigInt]) -> Polynomial {
    let coords: Vec<Scalar> = v.iter().map(|x| Scalar::Int(x.clone())).collect();
    Polynomial::from_coordinates(RingDescriptor::Integers, component, &coords)
}

/// Indices of `ambient` vectors that, in order, extend the span of `sub`
/// to the span of `ambient`. Returns the chosen indices and the
/// independent members of `sub`.
pub(crate) fn field_complement(
    ring: RingDescriptor,
    cols: usize,
    ambient: &[Vec<Scalar>],
    sub: &[Vec<Scalar>],
) -> (Vec<usize>, Vec<usize>) {
    let mut echelon = IncrementalEchelon::new(ring, cols);
    let target = ambient.len();
    let mut independent = Vec::new();
    for (i, v) in sub.iter().enumerate() {
        if echelon.rank() == target {
            break;
        }
        if echelon.insert(v) {
            independent.push(i);
        }
    }
    let mut chosen = Vec::new();
    for (i, v) in ambient.iter().enumerate() {
        if echelon.rank() == target {
            break;
        }
        if echelon.insert(v) {
            chosen.push(i);
        }
    }
    (chosen, independent)
}

/// Coordinates of `b` with respect to a lattice basis in Hermite normal
/// form; `None` when `b` is not in the lattice.
pub(crate) fn hnf_coordinates(basis: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = b.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let pivot = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
        let (q, r) = rest[pivot].div_rem(&row[pivot]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Number of generators of `Z^k / span(rows)`: the count of invariant
/// factors different from one.
fn cokernel_generator_count(rows: &[Vec<BigInt>], k: usize) -> usize {
    if rows.is_empty() {
        return k;
    }
    let m = ExactMatrix::from_bigint_rows(rows, k);
    let s = snf(&m).expect("integer matrix");
    k - s.elementary_divisors.iter().filter(|d| d.is_one()).count()
}

/// Generators of `L / M` for the lattice `L` with HNF basis `ambient` and a
/// sublattice `M` spanned by `sub` (both in ambient coordinates of `Z^N`).
///
/// Returns one vector per invariant factor of the cokernel that is not one,
/// so torsion contributes generators as well as free rank. Members of the
/// `ambient` basis are preferred, in order; if no such choice reaches the
/// minimal count, generators come from the Smith form.
pub(crate) fn lattice_complement(ambient: &[Vec<BigInt>], sub: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = ambient.len();
    if k == 0 {
        return Vec::new();
    }
    let coords: Vec<Vec<BigInt>> = sub
        .iter()
        .map(|b| hnf_coordinates(ambient, b).expect("sublattice must lie in the ambient lattice"))
        .collect();
    let current = lattice_basis(&coords, k);
    let needed = cokernel_generator_count(&current, k);
    if needed == 0 {
        return Vec::new();
    }

    let unit = |j: usize| -> Vec<BigInt> {
        (0..k).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
    };
    let mut rows = current.clone();
    let mut remaining = needed;
    let mut chosen = Vec::new();
    for j in 0..k {
        if remaining == 0 {
            break;
        }
        rows.push(unit(j));
        let count = cokernel_generator_count(&rows, k);
        if count < remaining {
            remaining = count;
            chosen.push(j);
        } else {
            rows.pop();
        }
    }
    if remaining == 0 {
        return chosen.into_iter().map(|j| ambient[j].clone()).collect();
    }

    // Smith fallback: rowspan(C) = span{d_i w_i} with w_i the rows of V^{-1}.
    let m = ExactMatrix::from_bigint_rows(&current, k);
    let s = snf(&m).expect("integer matrix");
    let v_inv = inverse(&s.v).expect("unimodular").to_bigint_rows();
    let r = s.elementary_divisors.len();
    (0..k)
        .filter(|&i| i >= r || !s.elementary_divisors[i].is_one())
        .map(|i| combine(&v_inv[i], ambient))
        .collect()
}

/// `sum_i coeffs[i] * basis[i]`.
pub(crate) fn combine(coeffs: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    let cols = basis.first().map_or(0, Vec::len);
    let mut out = vec![BigInt::zero(); cols];
    for (c, row) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn free_cokernel_prefers_basis_vectors() {
        // L = Z^2, M = span{(1, 2)}: cokernel Z, generated by e2 but not e1
        let ambient = vec![big(&[1, 0]), big(&[0, 1])];
        let gens = lattice_complement(&ambient, &[big(&[1, 2])]);
        assert_eq!(gens, vec![big(&[0, 1])]);
    }

    #[test]
    fn torsion_cokernel_gets_a_generator() {
        // M = 2 Z^2 inside Z^2: cokernel (Z/2)^2 needs two generators
        let ambient = vec![big(&[1, 0]), big(&[0, 1])];
        let gens = lattice_complement(&ambient, &[big(&[2, 0]), big(&[0, 2])]);
        assert_eq!(gens.len(), 2);
        // M = span{(1,1),(0,2)}: cokernel Z/2, one generator
        let gens = lattice_complement(&ambient, &[big(&[1, 1]), big(&[0, 2])]);
        assert_eq!(gens.len(), 1);
    }

    #[test]
    fn full_sublattice_needs_nothing() {
        let ambient = vec![big(&[1, 0, 1]), big(&[0, 1, 0])];
        assert!(lattice_complement(&ambient, &[big(&[1, 1, 1]), big(&[0, 1, 0])]).is_empty());
    }

    #[test]
    fn coordinates_in_hnf_basis() {
        let basis = vec![big(&[2, 1]), big(&[0, 3])];
        assert_eq!(hnf_coordinates(&basis, &big(&[4, 5])), Some(big(&[2, 1])));
        assert_eq!(hnf_coordinates(&basis, &big(&[1, 0])), None);
    }

    #[test]
    fn field_complement_in_order() {
        let q = RingDescriptor::Rationals;
        let v = |a: &[i64]| a.iter().map(|&x| Scalar::from_i64(q, x)).collect::<Vec<_>>();
        let ambient = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        let (chosen, indep) = field_complement(q, 3, &ambient, &[v(&[1, 1, 0]), v(&[2, 2, 0])]);
        assert_eq!(chosen, vec![0, 2]);
        assert_eq!(indep, vec![0]);
    }
}
