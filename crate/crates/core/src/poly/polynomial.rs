use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::monomial::{DegreeComponent, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{parse_ratio, RingDescriptor, Scalar};

/// Sparse multivariate polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingDescriptor,
    n_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: RingDescriptor, n_vars: usize) -> Self {
        Polynomial {
            ring,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: RingDescriptor, n_vars: usize, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(n_vars), c)
    }

    pub fn one(ring: RingDescriptor, n_vars: usize) -> Self {
        Self::constant(ring, n_vars, Scalar::one(ring))
    }

    pub fn variable(ring: RingDescriptor, n_vars: usize, i: usize) -> Self {
        Self::monomial(ring, Monomial::variable(n_vars, i), Scalar::one(ring))
    }

    pub fn monomial(ring: RingDescriptor, m: Monomial, c: Scalar) -> Self {
        assert_eq!(c.ring(), ring);
        let n_vars = m.n_vars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring, n_vars, terms }
    }

    pub fn from_terms(
        ring: RingDescriptor,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(ring, n_vars);
        for (m, c) in terms {
            ring.ensure_same(c.ring())?;
            if m.n_vars() != n_vars {
                return Err(Error::DimensionMismatch(format!(
                    "monomial in {} variables, expected {n_vars}",
                    m.n_vars()
                )));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear_form(ring: RingDescriptor, coeffs: &[Scalar]) -> Result<Self> {
        let n = coeffs.len();
        Self::from_terms(
            ring,
            n,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::variable(n, i), c.clone())),
        )
    }

    /// Polynomial with coordinates `coords` in the monomial basis of `component`.
    pub fn from_coordinates(ring: RingDescriptor, component: &DegreeComponent, coords: &[Scalar]) -> Self {
        assert_eq!(coords.len(), component.len());
        let terms = component
            .basis()
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial {
            ring,
            n_vars: component.n_vars(),
            terms,
        }
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some() || self.is_zero()
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = self.terms.keys().next()?.degree();
        let last = self.terms.keys().next_back()?.degree();
        (first == last).then_some(first)
    }

    /// Homogeneous degree or [`Error::NotHomogeneous`].
    pub fn require_homogeneous(&self) -> Result<u32> {
        self.homogeneous_degree()
            .ok_or_else(|| Error::NotHomogeneous(self.to_string()))
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        self.ring.ensure_same(other.ring)?;
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.n_vars, other.n_vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial {
            ring: self.ring,
            n_vars: self.n_vars,
            terms,
        }
    }

    /// Exact product.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            ring: self.ring,
            n_vars: self.n_vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring, self.n_vars);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Coefficient image in another ring.
    pub fn convert(&self, target: RingDescriptor) -> Result<Polynomial> {
        let mut out = Polynomial::zero(target, self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.convert(target)?);
        }
        Ok(out)
    }

    /// Coordinates in the monomial basis of `component`; terms of other
    /// degrees are an error.
    pub fn coordinates(&self, component: &DegreeComponent) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(self.ring); component.len()];
        for (m, c) in &self.terms {
            let i = component.index_of(m).ok_or_else(|| {
                Error::NotHomogeneous(format!("{self} has terms outside degree {}", component.degree()))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Parses the canonical text form (`2*x1^2*x2 - 3/4*x3 + 1`).
    pub fn parse(text: &str, ring: RingDescriptor, n_vars: usize) -> Result<Polynomial> {
        let mut p = Polynomial::zero(ring, n_vars);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !current.ends_with('^') {
                if !current.is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                } else if i > 0 {
                    return Err(Error::Parse(format!("dangling sign in {text:?}")));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {text:?}")));
        }
        terms.push((negative, current));
        for (neg, body) in terms {
            let (m, c) = parse_term(&body, n_vars)?;
            let c = if neg { -c } else { c };
            p.add_term(m, &Scalar::from_ratio(ring, &c)?);
        }
        Ok(p)
    }
}

fn parse_term(body: &str, n_vars: usize) -> Result<(Monomial, BigRational)> {
    let mut exps = vec![0u32; n_vars];
    let mut coeff = BigRational::one();
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {body:?}")));
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                None => (rest, 1),
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
            if idx == 0 || idx > n_vars {
                return Err(Error::Parse(format!("variable {factor:?} out of range 1..={n_vars}")));
            }
            exps[idx - 1] += exp;
        } else {
            coeff *= parse_ratio(factor)?;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}
