use std::fmt;

use num_bigint::BigInt;

use super::ring::{RingDescriptor, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over one of the supported rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: RingDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(ring: RingDescriptor, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ring.ensure_same(e.ring())?;
        }
        Ok(ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: RingDescriptor, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: RingDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ring));
        }
        m
    }

    /// Convenience constructor from small integer rows.
    pub fn from_i64_rows(ring: RingDescriptor, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Scalar::from_i64(ring, v)))
            .collect();
        Self::new(ring, rows.len(), cols, entries)
    }

    pub fn from_rows(ring: RingDescriptor, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(ring, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.ring(), self.ring, "entry ring must match matrix ring");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.ring.ensure_same(other.ring)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.ring.ensure_same(other.ring)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector product".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(self.ring), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Entrywise image in another ring (Z -> Q, Z -> F_p, Q -> F_p).
    pub fn convert(&self, target: RingDescriptor) -> Result<ExactMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.convert(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(ring: RingDescriptor, cols: usize, blocks: &[ExactMatrix]) -> Result<ExactMatrix> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            ring.ensure_same(b.ring)?;
            if b.cols != cols {
                return Err(Error::DimensionMismatch("vstack column count".into()));
            }
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        Ok(ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    /// Integer entries; panics if the ring is not Z.
    pub(crate) fn to_bigint_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| match e {
                        Scalar::Int(v) => v.clone(),
                        other => panic!("expected integer entry, got {}", other.ring()),
                    })
                    .collect()
            })
            .collect()
    }

    pub(crate) fn from_bigint_rows(rows: &[Vec<BigInt>], cols: usize) -> ExactMatrix {
        let entries: Vec<Scalar> = rows
            .iter()
            .flat_map(|r| r.iter().map(|v| Scalar::Int(v.clone())))
            .collect();
        ExactMatrix {
            ring: RingDescriptor::Integers,
            rows: rows.len(),
            cols,
            entries,
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
