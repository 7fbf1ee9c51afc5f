//! Integer normal forms: Hermite (row style), integer kernels and Smith.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::echelon::{integer_row, nullspace};
use super::matrix::ExactMatrix;
use super::ring::{RingDescriptor, Scalar};
use crate::error::Result;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: ExactMatrix,
    pub v: ExactMatrix,
    pub d: ExactMatrix,
    /// Diagonal of `d`: nonnegative, each dividing the next, zeros last.
    pub elementary_divisors: Vec<BigInt>,
}

type IntRows = Vec<Vec<BigInt>>;

fn identity_rows(n: usize) -> IntRows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Applies the unimodular 2x2 row operation
/// `(row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)`.
fn combine_rows(m: &mut IntRows, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
    let (ri, rj) = (m[i].clone(), m[j].clone());
    for k in 0..ri.len() {
        m[i][k] = a * &ri[k] + b * &rj[k];
        m[j][k] = c * &ri[k] + d * &rj[k];
    }
}

fn add_multiple(m: &mut IntRows, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(&src) {
        if !s.is_zero() {
            *t -= factor * s;
        }
    }
}

fn negate_row(m: &mut IntRows, i: usize) {
    for v in m[i].iter_mut() {
        *v = -&*v;
    }
}

/// Row-style Hermite normal form of integer rows; returns `(H, U)` with
/// `U * rows = H`. Pivots are positive and entries above each pivot lie in
/// `[0, pivot)`.
pub(crate) fn hnf_rows(rows: &IntRows, cols: usize) -> (IntRows, IntRows) {
    let n = rows.len();
    let mut h = rows.clone();
    let mut u = identity_rows(n);
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        for i in r + 1..n {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let e = h[r][c].extended_gcd(&h[i][c]);
            let a = &h[r][c] / &e.gcd;
            let b = &h[i][c] / &e.gcd;
            let nb = -b;
            combine_rows(&mut h, r, i, &e.x, &e.y, &nb, &a);
            combine_rows(&mut u, r, i, &e.x, &e.y, &nb, &a);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&pivot);
            add_multiple(&mut h, i, r, &q);
            add_multiple(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Hermite normal form over Z: `U * m = H`.
pub fn hnf(m: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    RingDescriptor::Integers.ensure_same(m.ring())?;
    let (h, u) = hnf_rows(&m.to_bigint_rows(), m.cols());
    Ok((
        ExactMatrix::from_bigint_rows(&h, m.cols()),
        ExactMatrix::from_bigint_rows(&u, m.rows()),
    ))
}

/// Canonical basis of the lattice spanned by `rows`: the nonzero rows of
/// its Hermite normal form.
pub(crate) fn lattice_basis(rows: &IntRows, cols: usize) -> IntRows {
    let (h, _) = hnf_rows(rows, cols);
    h.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())).collect()
}

/// A Z-basis of `{v in Z^cols : m v = 0}`, in Hermite normal form.
///
/// The kernel of an integer matrix is saturated; the basis returned spans
/// every integer vector in its rational span.
pub fn integer_kernel(m: &ExactMatrix) -> Result<Vec<Vec<BigInt>>> {
    RingDescriptor::Integers.ensure_same(m.ring())?;
    let cols = m.cols();
    if cols == 0 {
        return Ok(Vec::new());
    }
    // Rational kernel basis has unit coordinates in the free columns, so
    // an integral one is already a Z-basis of the integer kernel.
    let rational = nullspace(&m.convert(RingDescriptor::Rationals)?)?;
    let integral = rational.iter().all(|v| {
        v.iter().all(|e| match e {
            Scalar::Rat(q) => q.is_integer(),
            _ => true,
        })
    });
    let basis: IntRows = if integral {
        rational.iter().map(|v| integer_row(v)).collect()
    } else {
        let (h, u) = hnf_rows(&m.transpose().to_bigint_rows(), m.rows());
        h.iter()
            .zip(u)
            .filter(|(hr, _)| hr.iter().all(Zero::is_zero))
            .map(|(_, ur)| ur)
            .collect()
    };
    Ok(lattice_basis(&basis, cols))
}

/// Smith normal form by alternating row and column Hermite reductions,
/// followed by a gcd/lcm pass that enforces the divisibility chain.
pub fn snf(m: &ExactMatrix) -> Result<SmithDecomposition> {
    RingDescriptor::Integers.ensure_same(m.ring())?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.to_bigint_rows();
    let mut u = identity_rows(rows);
    // v is accumulated transposed: vt = V^T
    let mut vt = identity_rows(cols);
    loop {
        let (h, u1) = hnf_rows(&d, cols);
        d = h;
        u = mat_mul(&u1, &u);
        if is_diagonal(&d) {
            break;
        }
        let (h2, v1) = hnf_rows(&transpose(&d, rows, cols), rows);
        d = transpose(&h2, cols, rows);
        vt = mat_mul(&v1, &vt);
        if is_diagonal(&d) {
            break;
        }
    }
    let k = rows.min(cols);
    // divisibility chain on the diagonal
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (d[i][i].clone(), d[j][j].clone());
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                if !a.is_zero() && (&b % &a).is_zero() {
                    continue;
                }
                let e = a.extended_gcd(&b);
                let g = e.gcd.clone();
                let (s, t) = (e.x, e.y);
                let (ag, bg) = (&a / &g, &b / &g);
                // U2 = [[s, t], [-b/g, a/g]] on rows i, j
                combine_rows(&mut u, i, j, &s, &t, &(-&bg), &ag);
                // V2 = [[1, -t*b/g], [1, s*a/g]] on columns i, j: rows of V^T
                let c01 = -(&t * &bg);
                let c11 = &s * &ag;
                combine_rows(&mut vt, i, j, &BigInt::one(), &BigInt::one(), &c01, &c11);
                d[i][i] = g;
                d[j][j] = &a * &bg;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for i in 0..k {
        if d[i][i].is_negative() {
            d[i][i] = -&d[i][i];
            negate_row(&mut u, i);
        }
    }
    let elementary_divisors = (0..k).map(|i| d[i][i].clone()).collect();
    let v = transpose(&vt, cols, cols);
    Ok(SmithDecomposition {
        u: ExactMatrix::from_bigint_rows(&u, rows),
        v: ExactMatrix::from_bigint_rows(&v, cols),
        d: ExactMatrix::from_bigint_rows(&d, cols),
        elementary_divisors,
    })
}

fn is_diagonal(m: &IntRows) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, v)| i == j || v.is_zero()))
}

fn transpose(m: &IntRows, rows: usize, cols: usize) -> IntRows {
    (0..cols).map(|c| (0..rows).map(|r| m[r][c].clone()).collect()).collect()
}

fn mat_mul(a: &IntRows, b: &IntRows) -> IntRows {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}
