//! Linear substitutions `x -> m x` and their matrices on graded pieces.

use super::monomial::{monomial_basis, Monomial};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

/// Powers `L_i^e` of the substituted linear forms, built on demand.
struct PowerCache {
    forms: Vec<Polynomial>,
    powers: Vec<Vec<Polynomial>>,
}

impl PowerCache {
    fn new(m: &ExactMatrix) -> Result<Self> {
        let forms = (0..m.rows())
            .map(|i| Polynomial::linear_form(m.ring(), m.row(i)))
            .collect::<Result<Vec<_>>>()?;
        let n = m.rows();
        let powers = forms.iter().map(|_| vec![Polynomial::one(m.ring(), n)]).collect();
        Ok(PowerCache { forms, powers })
    }

    fn power(&mut self, i: usize, e: u32) -> &Polynomial {
        let e = e as usize;
        while self.powers[i].len() <= e {
            let next = self.powers[i].last().expect("nonempty").mul_unchecked(&self.forms[i]);
            self.powers[i].push(next);
        }
        &self.powers[i][e]
    }

    fn image(&mut self, mono: &Monomial) -> Polynomial {
        let n = self.forms.len();
        let ring = self.forms.first().map(Polynomial::ring).expect("at least one variable");
        let mut acc = Polynomial::one(ring, n);
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e > 0 {
                acc = acc.mul_unchecked(self.power(i, e));
            }
        }
        acc
    }
}

fn check(f_vars: usize, f_ring: crate::linalg::RingDescriptor, m: &ExactMatrix) -> Result<()> {
    f_ring.ensure_same(m.ring())?;
    if !m.is_square() || m.rows() != f_vars {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} substitution in {} variables",
            m.rows(),
            m.cols(),
            f_vars
        )));
    }
    Ok(())
}

/// Replaces each `x_i` by the i-th entry of `m * (x_1, ..., x_n)^T`.
pub fn substitute_linear(f: &Polynomial, m: &ExactMatrix) -> Result<Polynomial> {
    check(f.n_vars(), f.ring(), m)?;
    let mut cache = PowerCache::new(m)?;
    let mut out = Polynomial::zero(f.ring(), f.n_vars());
    for (mono, c) in f.terms() {
        let image = cache.image(mono).scale(c);
        out = out.add(&image)?;
    }
    Ok(out)
}

/// Matrix of `f -> f(m x)` on the degree-`degree` monomial basis: column
/// `j` holds the coordinates of the image of the j-th basis monomial.
pub fn action_matrix(m: &ExactMatrix, degree: u32) -> Result<ExactMatrix> {
    let n = m.rows();
    check(n, m.ring(), m)?;
    let component = monomial_basis(n, degree);
    let size = component.len();
    let mut cache = PowerCache::new(m)?;
    let mut out = ExactMatrix::zeros(m.ring(), size, size);
    for (j, mono) in component.basis().iter().enumerate() {
        let image = cache.image(mono);
        for (mono_i, c) in image.terms() {
            let i = component.index_of(mono_i).expect("substitution preserves degree");
            out.set(i, j, c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RingDescriptor;

    fn q() -> RingDescriptor {
        RingDescriptor::Rationals
    }

    fn mat(ring: RingDescriptor, rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(ring, rows).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, q(), 2).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let swap = mat(q(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(substitute_linear(&p("x1"), &swap).unwrap(), p("x2"));
        let rot = mat(q(), &[vec![0, 1], vec![-1, 0]]);
        assert_eq!(substitute_linear(&p("x1^2 + x2^2"), &rot).unwrap(), p("x1^2 + x2^2"));
        let shear = mat(q(), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(substitute_linear(&p("x1*x2"), &shear).unwrap(), p("x1*x2 + x2^2"));
    }

    #[test]
    fn substitution_dimension_checked() {
        let m = ExactMatrix::identity(q(), 3);
        assert!(matches!(substitute_linear(&p("x1"), &m), Err(Error::DimensionMismatch(_))));
        let mz = ExactMatrix::identity(RingDescriptor::Integers, 2);
        assert!(matches!(substitute_linear(&p("x1"), &mz), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn action_matrix_examples() {
        for d in 0..4 {
            let a = action_matrix(&ExactMatrix::identity(q(), 3), d).unwrap();
            assert!(a.is_identity());
        }
        let minus = mat(q(), &[vec![-1, 0], vec![0, -1]]);
        assert_eq!(action_matrix(&minus, 1).unwrap(), minus);
        assert!(action_matrix(&minus, 2).unwrap().is_identity());
        assert_eq!(action_matrix(&minus, 2).unwrap().rows(), 3);
    }
}
