//! Elimination over fields: reduced row echelon form, rank, nullspace,
//! determinant and inverse.
//!
//! Rational matrices are eliminated fraction-free: every row is scaled to a
//! primitive integer vector and rows are combined with integer multipliers,
//! dividing out the row content after each step. Fractions only appear when
//! the final pivots are normalized to one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::ring::{bigint_mod, inv_mod, mul_mod, RingDescriptor, Scalar};
use crate::error::{Error, Result};

/// Row entries in the representation used by the elimination kernels.
#[derive(Debug, Clone)]
enum Rows {
    /// Primitive integer rows spanning the same rational row space.
    Int(Vec<Vec<BigInt>>),
    Mod(Vec<Vec<u64>>, u64),
}

fn lcm_of_denominators(row: &[Scalar]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, e| match e {
        Scalar::Rat(q) => acc.lcm(q.denom()),
        _ => acc,
    })
}

pub(crate) fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let l = lcm_of_denominators(row);
    row.iter()
        .map(|e| match e {
            Scalar::Int(v) => v * &l,
            Scalar::Rat(q) => q.numer() * (&l / q.denom()),
            Scalar::Mod { .. } => unreachable!("prime field entry in integer row"),
        })
        .collect()
}

fn mod_row(row: &[Scalar]) -> Vec<u64> {
    row.iter()
        .map(|e| match e {
            Scalar::Mod { value, .. } => *value,
            _ => unreachable!("non-residue entry in prime field row"),
        })
        .collect()
}

fn to_rows(m: &ExactMatrix) -> Rows {
    match m.ring() {
        RingDescriptor::PrimeField(p) => Rows::Mod((0..m.rows()).map(|r| mod_row(m.row(r))).collect(), p.get()),
        _ => Rows::Int((0..m.rows()).map(|r| integer_row(m.row(r))).collect()),
    }
}

pub(crate) fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// `target <- (p/g) * target - (a/g) * pivot_row` where `a = target[c]`,
/// `p = pivot_row[c]`; clears column `c` of `target`.
fn eliminate_int(target: &mut [BigInt], pivot_row: &[BigInt], c: usize) {
    let a = target[c].clone();
    if a.is_zero() {
        return;
    }
    let p = &pivot_row[c];
    let g = a.gcd(p);
    let fa = p / &g;
    let fb = &a / &g;
    for (t, r) in target.iter_mut().zip(pivot_row) {
        if r.is_zero() {
            if !t.is_zero() {
                *t = &*t * &fa;
            }
        } else {
            *t = &*t * &fa - r * &fb;
        }
    }
    make_primitive(target);
}

fn eliminate_mod(target: &mut [u64], pivot_row: &[u64], c: usize, p: u64) {
    // pivot_row[c] == 1
    let a = target[c];
    if a == 0 {
        return;
    }
    let f = p - a;
    for (t, &r) in target.iter_mut().zip(pivot_row) {
        if r != 0 {
            *t = ((*t as u128 + mul_mod(f, r, p) as u128) % p as u128) as u64;
        }
    }
}

/// Gauss-Jordan (when `full`) or plain forward elimination. Returns pivot
/// columns; the first `pivots.len()` rows hold the echelon rows.
fn eliminate(rows: &mut Rows, cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    match rows {
        Rows::Int(rs) => {
            for r in rs.iter_mut() {
                make_primitive(r);
            }
            let mut top = 0;
            for c in 0..cols {
                if top == rs.len() {
                    break;
                }
                // smallest nonzero entry as pivot keeps multipliers small
                let Some(best) = (top..rs.len())
                    .filter(|&i| !rs[i][c].is_zero())
                    .min_by(|&i, &j| rs[i][c].abs().cmp(&rs[j][c].abs()).then(i.cmp(&j)))
                else {
                    continue;
                };
                rs.swap(top, best);
                if rs[top][c].is_negative() {
                    for v in rs[top].iter_mut() {
                        *v = -&*v;
                    }
                }
                let pivot_row = rs[top].clone();
                let start = if full { 0 } else { top + 1 };
                for i in start..rs.len() {
                    if i != top {
                        eliminate_int(&mut rs[i], &pivot_row, c);
                    }
                }
                pivots.push(c);
                top += 1;
            }
        }
        Rows::Mod(rs, p) => {
            let p = *p;
            let mut top = 0;
            for c in 0..cols {
                if top == rs.len() {
                    break;
                }
                let Some(best) = (top..rs.len()).find(|&i| rs[i][c] != 0) else {
                    continue;
                };
                rs.swap(top, best);
                let inv = inv_mod(rs[top][c], p).expect("nonzero residue is invertible");
                for v in rs[top].iter_mut() {
                    *v = mul_mod(*v, inv, p);
                }
                let pivot_row = rs[top].clone();
                let start = if full { 0 } else { top + 1 };
                for i in start..rs.len() {
                    if i != top {
                        eliminate_mod(&mut rs[i], &pivot_row, c, p);
                    }
                }
                pivots.push(c);
                top += 1;
            }
        }
    }
    pivots
}

/// Reduced row echelon form over a field, with its pivot columns.
pub fn rref(m: &ExactMatrix) -> Result<(ExactMatrix, Vec<usize>)> {
    let ring = m.ring();
    ring.ensure_field()?;
    let mut rows = to_rows(m);
    let pivots = eliminate(&mut rows, m.cols(), true);
    let out_rows: Vec<Vec<Scalar>> = match rows {
        Rows::Int(rs) => rs
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                if i < pivots.len() {
                    let p = r[pivots[i]].clone();
                    r.into_iter()
                        .map(|v| Scalar::Rat(BigRational::new(v, p.clone())))
                        .collect()
                } else {
                    vec![Scalar::zero(ring); m.cols()]
                }
            })
            .collect(),
        Rows::Mod(rs, _) => rs
            .into_iter()
            .map(|r| r.into_iter().map(|v| Scalar::from_i64(ring, v as i64)).collect())
            .collect(),
    };
    Ok((ExactMatrix::from_rows(ring, m.cols(), out_rows)?, pivots))
}

/// Rank over the fraction field (integer matrices are ranked over Q).
pub fn rank(m: &ExactMatrix) -> usize {
    let mut rows = to_rows(m);
    eliminate(&mut rows, m.cols(), false).len()
}

/// Basis of the right kernel `{v : m v = 0}` over a field.
///
/// One vector per non-pivot column `f`, with a one in coordinate `f` and
/// zeros in the other free coordinates.
pub fn nullspace(m: &ExactMatrix) -> Result<Vec<Vec<Scalar>>> {
    let ring = m.ring();
    let (reduced, pivots) = rref(m)?;
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(ring); m.cols()];
            v[f] = Scalar::one(ring);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced.get(i, f);
            }
            v
        })
        .collect())
}

/// Determinant by fraction-free (Bareiss) elimination, or Gaussian
/// elimination over F_p.
pub fn determinant(m: &ExactMatrix) -> Result<Scalar> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
    }
    let ring = m.ring();
    let n = m.rows();
    match ring {
        RingDescriptor::PrimeField(p) => {
            let p = p.get();
            let mut a: Vec<Vec<u64>> = (0..n).map(|r| mod_row(m.row(r))).collect();
            let mut det = 1u64;
            for c in 0..n {
                let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else {
                    return Ok(Scalar::zero(ring));
                };
                if piv != c {
                    a.swap(piv, c);
                    det = (p - det) % p;
                }
                det = mul_mod(det, a[c][c], p);
                let inv = inv_mod(a[c][c], p).expect("nonzero");
                let row = a[c].clone();
                for r in a.iter_mut().skip(c + 1) {
                    let f = mul_mod(r[c], inv, p);
                    if f != 0 {
                        for (x, &y) in r.iter_mut().zip(&row) {
                            *x = (*x + p - mul_mod(f, y, p)) % p;
                        }
                    }
                }
            }
            Ok(Scalar::from_i64(ring, det as i64))
        }
        _ => {
            let mut scale = BigInt::one();
            let mut a: Vec<Vec<BigInt>> = (0..n)
                .map(|r| {
                    let l = lcm_of_denominators(m.row(r));
                    scale *= &l;
                    integer_row(m.row(r))
                })
                .collect();
            let det = bareiss(&mut a);
            let value = BigRational::new(det, scale);
            Scalar::from_ratio(ring, &value)
        }
    }
}

fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse over the matrix's own ring; over Z the inverse must be integral.
pub fn inverse(m: &ExactMatrix) -> Result<ExactMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
    }
    let ring = m.ring();
    let n = m.rows();
    let field = ring.fraction_field();
    let mf = m.convert(field)?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = mf.row(r).to_vec();
        row.extend((0..n).map(|c| if c == r { Scalar::one(field) } else { Scalar::zero(field) }));
        rows.push(row);
    }
    let aug = ExactMatrix::from_rows(field, 2 * n, rows)?;
    let (reduced, pivots) = rref(&aug)?;
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::NotInvertibleOverRing(ring));
    }
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let e = reduced.get(r, n + c);
            let v = match ring {
                RingDescriptor::Integers => Scalar::from_ratio(ring, &e.to_ratio())
                    .map_err(|_| Error::NotInvertibleOverRing(ring))?,
                _ => e.clone(),
            };
            entries.push(v);
        }
    }
    ExactMatrix::new(ring, n, n, entries)
}

/// Row space of a growing set of vectors over a field, kept in echelon
/// form keyed by pivot column. Integer and rational vectors are handled
/// over Q.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    cols: usize,
    inner: EchelonRows,
}

#[derive(Debug, Clone)]
enum EchelonRows {
    Int(BTreeMap<usize, Vec<BigInt>>),
    Mod(BTreeMap<usize, Vec<u64>>, u64),
}

impl IncrementalEchelon {
    pub fn new(ring: RingDescriptor, cols: usize) -> Self {
        let inner = match ring {
            RingDescriptor::PrimeField(p) => EchelonRows::Mod(BTreeMap::new(), p.get()),
            _ => EchelonRows::Int(BTreeMap::new()),
        };
        IncrementalEchelon { cols, inner }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            EchelonRows::Int(m) => m.len(),
            EchelonRows::Mod(m, _) => m.len(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.cols
    }

    /// Adds `v` to the span; returns true when it was independent.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length must match");
        match &mut self.inner {
            EchelonRows::Int(rows) => {
                let mut w = integer_row(v);
                make_primitive(&mut w);
                insert_int(rows, w)
            }
            EchelonRows::Mod(rows, p) => {
                let p = *p;
                insert_mod(rows, mod_row(v), p)
            }
        }
    }

    /// Like [`insert`](Self::insert) but for integer vectors given directly.
    pub fn insert_int(&mut self, v: Vec<BigInt>) -> bool {
        match &mut self.inner {
            EchelonRows::Int(rows) => {
                let mut w = v;
                make_primitive(&mut w);
                insert_int(rows, w)
            }
            EchelonRows::Mod(rows, p) => {
                let p = *p;
                let w = v.iter().map(|x| bigint_mod(x, p)).collect();
                insert_mod(rows, w, p)
            }
        }
    }

    /// Whether `v` already lies in the span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut probe = self.clone();
        !probe.insert(v)
    }
}

fn insert_int(rows: &mut BTreeMap<usize, Vec<BigInt>>, mut w: Vec<BigInt>) -> bool {
    let mut c = 0;
    while c < w.len() {
        if w[c].is_zero() {
            c += 1;
            continue;
        }
        match rows.get(&c) {
            Some(r) => {
                eliminate_int(&mut w, r, c);
                c += 1;
            }
            None => {
                if w[c].is_negative() {
                    for x in w.iter_mut() {
                        *x = -&*x;
                    }
                }
                rows.insert(c, w);
                return true;
            }
        }
    }
    false
}

fn insert_mod(rows: &mut BTreeMap<usize, Vec<u64>>, mut w: Vec<u64>, p: u64) -> bool {
    let mut c = 0;
    while c < w.len() {
        if w[c] == 0 {
            c += 1;
            continue;
        }
        match rows.get(&c) {
            Some(r) => {
                eliminate_mod(&mut w, r, c, p);
                c += 1;
            }
            None => {
                let inv = inv_mod(w[c], p).expect("nonzero");
                for x in w.iter_mut() {
                    *x = mul_mod(*x, inv, p);
                }
                rows.insert(c, w);
                return true;
            }
        }
    }
    false
}
