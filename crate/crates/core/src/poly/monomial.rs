use std::collections::HashMap;
use std::fmt;

/// A monomial `x1^e1 * ... * xn^en`.
///
/// The derived ordering compares the cached degree first and the exponent
/// vectors lexicographically second, which is the graded-lex order used
/// everywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Monomial { degree, exponents }
    }

    pub fn one(n_vars: usize) -> Self {
        Monomial::new(vec![0; n_vars])
    }

    pub fn variable(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn n_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of one degree, in descending graded-lex order.
#[derive(Debug, Clone)]
pub struct DegreeComponent {
    n_vars: usize,
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeComponent {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Enumerates the monomials of degree `degree` in `n_vars` variables.
pub fn monomial_basis(n_vars: usize, degree: u32) -> DegreeComponent {
    assert!(n_vars >= 1, "need at least one variable");
    let mut basis = Vec::new();
    let mut current = vec![0u32; n_vars];
    fill(&mut current, 0, degree, &mut basis);
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    DegreeComponent {
        n_vars,
        degree,
        basis,
        index,
    }
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// `C(n + d - 1, d)`, the number of monomials of degree `d` in `n` variables.
pub fn component_dimension(n_vars: usize, degree: u32) -> usize {
    let (n, d) = (n_vars as u128, degree as u128);
    let mut acc: u128 = 1;
    for i in 1..=d {
        acc = acc * (n - 1 + i) / i;
    }
    acc as usize
}
