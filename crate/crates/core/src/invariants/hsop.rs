//! Homogeneous systems of parameters: quotient-dimension certificates,
//! orbit-product construction from admissible linear forms, and lifting
//! from a residue field to Z.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{act, reduce_mod_p, MatrixGroup, DEFAULT_CAP};
use crate::linalg::{IncrementalEchelon, Prime, RingDescriptor, Scalar};
use crate::poly::{monomial_basis, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Orbit products of these linear forms.
    DadeLinearForms(Vec<Polynomial>),
    UserSupplied,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hsop {
    pub polys: Vec<Polynomial>,
    pub degrees: Vec<u32>,
    pub provenance: Provenance,
}

impl Hsop {
    /// Wraps user polynomials; each must be homogeneous of positive degree.
    pub fn user_supplied(polys: Vec<Polynomial>) -> Result<Hsop> {
        let degrees = degrees_of(&polys)?;
        Ok(Hsop {
            polys,
            degrees,
            provenance: Provenance::UserSupplied,
        })
    }

    /// `sum_i (deg f_i - 1)`.
    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().map(|d| d - 1).sum()
    }

    pub fn ring(&self) -> Option<RingDescriptor> {
        self.polys.first().map(Polynomial::ring)
    }

    pub fn linear_forms(&self) -> Option<&[Polynomial]> {
        match &self.provenance {
            Provenance::DadeLinearForms(g) => Some(g),
            Provenance::UserSupplied => None,
        }
    }
}

fn degrees_of(polys: &[Polynomial]) -> Result<Vec<u32>> {
    polys
        .iter()
        .map(|f| {
            let d = f.require_homogeneous()?;
            if d == 0 {
                return Err(Error::ConstantElement(f.to_string()));
            }
            Ok(d)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Hsop,
    NotHsop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsopCertificate {
    /// `dim (S / (f_1, ..., f_n))_e` for `e = 0 ..= D + 1`.
    pub quotient_dims: Vec<usize>,
    pub verdict: Verdict,
    pub regular_sequence: bool,
    pub field: RingDescriptor,
}

impl HsopCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Hsop
    }
}

/// Coefficients of `prod_i (1 - t^{d_i}) / (1 - t)^n` in degrees `0 ..= top`.
pub fn complete_intersection_series(n: usize, degrees: &[u32], top: u32) -> Vec<i128> {
    let len = top as usize + 1;
    // 1/(1-t)^n: binomial(k + n - 1, n - 1)
    let mut series = vec![0i128; len];
    series[0] = 1;
    for _ in 0..n {
        for k in 1..len {
            series[k] += series[k - 1];
        }
    }
    for &d in degrees {
        let d = d as usize;
        for k in (d..len).rev() {
            series[k] -= series[k - d];
        }
    }
    series
}

/// Dimensions of `S_e / sum_i f_i S_{e - d_i}` for `e = 0 ..= top`, over the
/// field of the polynomials.
pub(crate) fn quotient_dims(fs: &[Polynomial], degrees: &[u32], n: usize, top: u32) -> Vec<usize> {
    let ring = fs.first().map_or(RingDescriptor::Rationals, Polynomial::ring);
    let mut dims = Vec::with_capacity(top as usize + 1);
    let mut vanished = false;
    for e in 0..=top {
        if vanished {
            // S_{e+1} = S_1 S_e, so the quotient stays zero
            dims.push(0);
            continue;
        }
        let component = monomial_basis(n, e);
        let mut echelon = IncrementalEchelon::new(ring, component.len());
        'fill: for (f, &d) in fs.iter().zip(degrees) {
            if d > e {
                continue;
            }
            for m in monomial_basis(n, e - d).basis() {
                if echelon.is_full() {
                    break 'fill;
                }
                let shifted = f.mul_unchecked(&Polynomial::monomial(ring, m.clone(), Scalar::one(ring)));
                echelon.insert(&shifted.coordinates(&component).expect("homogeneous of degree e"));
            }
        }
        let dim = component.len() - echelon.rank();
        vanished = dim == 0;
        dims.push(dim);
    }
    dims
}

/// Certificate for `fs` over the group's ring, which must be a field.
///
/// The quotient `S / (f_1, ..., f_n)` is finite dimensional exactly when it
/// vanishes in degree `D + 1`, `D = sum (deg f_i - 1)`.
pub fn verify_hsop(g: &MatrixGroup, fs: &[Polynomial]) -> Result<HsopCertificate> {
    let field = g.ring();
    field.ensure_field()?;
    let n = g.dimension();
    if fs.len() != n {
        return Err(Error::WrongCount { expected: n, got: fs.len() });
    }
    for f in fs {
        field.ensure_same(f.ring())?;
        if f.n_vars() != n {
            return Err(Error::DimensionMismatch(format!("{f} is not in {n} variables")));
        }
    }
    let degrees = degrees_of(fs)?;
    for f in fs {
        for s in g.elements() {
            if act(s, f)? != *f {
                return Err(Error::NotInvariant(f.to_string()));
            }
        }
    }
    let top: u32 = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
    let quotient_dims = quotient_dims(fs, &degrees, n, top);
    let expected = complete_intersection_series(n, &degrees, top);
    let regular_sequence = quotient_dims.iter().zip(&expected).all(|(&a, &b)| a as i128 == b);
    let verdict = if quotient_dims[top as usize] == 0 {
        Verdict::Hsop
    } else {
        Verdict::NotHsop
    };
    Ok(HsopCertificate {
        quotient_dims,
        verdict,
        regular_sequence,
        field,
    })
}

/// Certificate over `field` for a group and polynomials given over Z, Q
/// or the field itself.
pub fn certify_over(g: &MatrixGroup, fs: &[Polynomial], field: RingDescriptor, cap: usize) -> Result<HsopCertificate> {
    let image = match (g.ring(), field) {
        (RingDescriptor::Integers, RingDescriptor::PrimeField(p)) => reduce_mod_p(g, p, cap)?.group,
        _ => g.convert(field, cap)?,
    };
    let converted = fs.iter().map(|f| f.convert(field)).collect::<Result<Vec<_>>>()?;
    verify_hsop(&image, &converted)
}

/// An hsop together with the certificates that were checked for it.
#[derive(Debug, Clone)]
pub struct CertifiedHsop {
    pub hsop: Hsop,
    pub certificates: Vec<HsopCertificate>,
}

impl CertifiedHsop {
    /// Fields with a passing certificate, as `{ℚ, 2, 3}`.
    pub fn certified_at(&self) -> String {
        let names: Vec<String> = self
            .certificates
            .iter()
            .filter(|c| c.passed())
            .map(|c| match c.field {
                RingDescriptor::PrimeField(p) => p.get().to_string(),
                _ => "ℚ".to_string(),
            })
            .collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn all_passed(&self) -> bool {
        self.certificates.iter().all(HsopCertificate::passed)
    }
}

#[derive(Debug, Clone)]
pub struct DadeOptions {
    pub seed: u64,
    /// Rounds of random draws; the coefficient box doubles each round.
    pub rounds: u32,
    pub draws_per_round: u32,
    /// For groups over Z: primes at which the forms must also be
    /// admissible, and at which the result is certified.
    pub primes: Vec<Prime>,
    pub cap: usize,
    /// Largest `p^n` searched exhaustively over a finite field.
    pub exhaustive_limit: u64,
}

impl Default for DadeOptions {
    fn default() -> Self {
        DadeOptions {
            seed: 0,
            rounds: 16,
            draws_per_round: 64,
            primes: Vec::new(),
            cap: DEFAULT_CAP,
            exhaustive_limit: 1 << 20,
        }
    }
}

/// Orbits of the linear forms chosen so far, over one field.
struct TupleCondition<'g> {
    group: &'g MatrixGroup,
    orbits: Vec<Vec<Vec<Scalar>>>,
}

impl<'g> TupleCondition<'g> {
    fn new(group: &'g MatrixGroup) -> Self {
        TupleCondition {
            group,
            orbits: Vec::new(),
        }
    }

    fn field(&self) -> RingDescriptor {
        self.group.ring()
    }

    fn to_field(&self, c: &[i64]) -> Vec<Scalar> {
        c.iter().map(|&x| Scalar::from_i64(self.field(), x)).collect()
    }

    /// `c` avoids `span(o_1, ..., o_{j-1})` for every choice of `o_k` in the
    /// orbit of the k-th chosen form.
    fn admissible(&self, c: &[Scalar]) -> bool {
        if c.iter().all(Scalar::is_zero) {
            return false;
        }
        let n = self.group.dimension();
        self.avoids(0, IncrementalEchelon::new(self.field(), n), c)
    }

    fn avoids(&self, k: usize, span: IncrementalEchelon, c: &[Scalar]) -> bool {
        if k == self.orbits.len() {
            return !span.contains(c);
        }
        self.orbits[k].iter().all(|o| {
            let mut next = span.clone();
            next.insert(o);
            self.avoids(k + 1, next, c)
        })
    }

    fn push(&mut self, c: &[Scalar]) {
        let n = self.group.dimension();
        let form = Polynomial::linear_form(self.field(), c).expect("field coefficients");
        let mut orbit: Vec<Vec<Scalar>> = Vec::new();
        for s in self.group.elements() {
            let image = act(s, &form).expect("same ring");
            let v = linear_coefficients(&image, n);
            if !orbit.contains(&v) {
                orbit.push(v);
            }
        }
        self.orbits.push(orbit);
    }

    fn pop(&mut self) {
        self.orbits.pop();
    }
}

fn linear_coefficients(f: &Polynomial, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|i| {
            f.coefficient(&Monomial::variable(n, i))
                .cloned()
                .unwrap_or_else(|| Scalar::zero(f.ring()))
        })
        .collect()
}

fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|k| i64::from(k == i)).collect()
}

/// `prod_{sigma in G} sigma(g)` for the linear form with coefficients `c`.
fn orbit_product(g: &MatrixGroup, c: &[i64]) -> Result<(Polynomial, Polynomial)> {
    let ring = g.ring();
    let coeffs: Vec<Scalar> = c.iter().map(|&x| Scalar::from_i64(ring, x)).collect();
    let form = Polynomial::linear_form(ring, &coeffs)?;
    let mut product = Polynomial::one(ring, g.dimension());
    for s in g.elements() {
        product = product.mul_unchecked(&act(s, &form)?);
    }
    Ok((form, product))
}

fn assemble(g: &MatrixGroup, forms: &[Vec<i64>]) -> Result<Hsop> {
    let mut linear = Vec::new();
    let mut polys = Vec::new();
    for c in forms {
        let (form, product) = orbit_product(g, c)?;
        linear.push(form);
        polys.push(product);
    }
    let degrees = degrees_of(&polys)?;
    Ok(Hsop {
        polys,
        degrees,
        provenance: Provenance::DadeLinearForms(linear),
    })
}

/// Candidate coefficient vectors: the variables, then seeded random draws
/// from `[-B, B]^n` with `B` doubling per round.
fn integer_candidates(n: usize, opts: &DadeOptions, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..n).map(|i| unit_vector(n, i)).collect();
    let mut bound: i64 = 1;
    for _ in 0..opts.rounds {
        for _ in 0..opts.draws_per_round {
            out.push((0..n).map(|_| rng.gen_range(-bound..=bound)).collect());
        }
        bound = bound.saturating_mul(2);
    }
    out
}

/// Dade's construction: linear forms `g_1, ..., g_n` such that each `g_j`
/// avoids every span `<sigma_1 g_1, ..., sigma_{j-1} g_{j-1}>`, and their
/// orbit products `f_j = prod_sigma sigma(g_j)`, all of degree `|G|`.
///
/// Over Q and Z the forms have integer coefficients; for Z they are also
/// admissible modulo each prime in `opts.primes`, and a certificate is
/// produced over Q and every such prime. Over `F_p` the search falls back
/// to exhaustive enumeration when random draws fail.
pub fn dade_hsop(g: &MatrixGroup, opts: &DadeOptions) -> Result<CertifiedHsop> {
    let ring = g.ring();
    if let RingDescriptor::PrimeField(p) = ring {
        let forms = finite_field_forms(g, p, opts)?;
        let hsop = assemble(g, &forms)?;
        let cert = verify_hsop(g, &hsop.polys)?;
        if !cert.passed() {
            return Err(Error::VerificationFailed(ring));
        }
        return Ok(CertifiedHsop {
            hsop,
            certificates: vec![cert],
        });
    }

    let n = g.dimension();
    let rational = g.convert(RingDescriptor::Rationals, opts.cap)?;
    let primes: &[Prime] = if ring == RingDescriptor::Integers { &opts.primes } else { &[] };
    let reduced = primes
        .iter()
        .map(|&p| reduce_mod_p(g, p, opts.cap).map(|r| r.group))
        .collect::<Result<Vec<_>>>()?;
    let mut conditions: Vec<TupleCondition> = std::iter::once(&rational)
        .chain(reduced.iter())
        .map(TupleCondition::new)
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut forms = Vec::with_capacity(n);
    for _ in 0..n {
        let candidates = integer_candidates(n, opts, &mut rng);
        let found = candidates.into_iter().find(|c| {
            conditions.iter().all(|cond| cond.admissible(&cond.to_field(c)))
        });
        let c = found.ok_or(Error::SearchBudgetExceeded)?;
        for cond in conditions.iter_mut() {
            let v = cond.to_field(&c);
            cond.push(&v);
        }
        forms.push(c);
    }

    let hsop = assemble(g, &forms)?;
    let mut certificates = vec![certify_over(g, &hsop.polys, RingDescriptor::Rationals, opts.cap)?];
    if !certificates[0].passed() {
        return Err(Error::VerificationFailed(RingDescriptor::Rationals));
    }
    for &p in primes {
        certificates.push(certify_over(g, &hsop.polys, RingDescriptor::PrimeField(p), opts.cap)?);
    }
    Ok(CertifiedHsop { hsop, certificates })
}

/// Admissible forms over `F_p` for a group over `F_p`, as representatives
/// in `(-p/2, p/2]`.
fn finite_field_forms(g: &MatrixGroup, p: Prime, opts: &DadeOptions) -> Result<Vec<Vec<i64>>> {
    let n = g.dimension();
    let pv = p.get();
    let lift = |v: u64| -> i64 {
        if v > pv / 2 {
            -((pv - v) as i64)
        } else {
            v as i64
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cond = TupleCondition::new(g);

    // greedy pass: variables, then random vectors
    let mut forms = Vec::new();
    for _ in 0..n {
        let mut candidates: Vec<Vec<i64>> = (0..n).map(|i| unit_vector(n, i)).collect();
        for _ in 0..opts.rounds * opts.draws_per_round {
            candidates.push((0..n).map(|_| lift(rng.gen_range(0..pv))).collect());
        }
        match candidates.into_iter().find(|c| cond.admissible(&cond.to_field(c))) {
            Some(c) => {
                let v = cond.to_field(&c);
                cond.push(&v);
                forms.push(c);
            }
            None => break,
        }
    }
    if forms.len() == n {
        return Ok(forms);
    }

    // exhaustive backtracking over F_p^n
    let total = (pv as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > u128::from(opts.exhaustive_limit) {
        return Err(Error::SearchBudgetExceeded);
    }
    let all: Vec<Vec<i64>> = (1..total as u64)
        .map(|mut k| {
            let mut v = vec![0i64; n];
            for x in v.iter_mut().rev() {
                *x = lift(k % pv);
                k /= pv;
            }
            v
        })
        .collect();
    let mut cond = TupleCondition::new(g);
    let mut chosen = Vec::new();
    if backtrack(&mut cond, &all, n, &mut chosen) {
        Ok(chosen)
    } else {
        Err(Error::ResidueFieldTooSmall(pv))
    }
}

fn backtrack(cond: &mut TupleCondition, all: &[Vec<i64>], n: usize, chosen: &mut Vec<Vec<i64>>) -> bool {
    if chosen.len() == n {
        return true;
    }
    for c in all {
        let v = cond.to_field(c);
        if !cond.admissible(&v) {
            continue;
        }
        cond.push(&v);
        chosen.push(c.clone());
        if backtrack(cond, all, n, chosen) {
            return true;
        }
        chosen.pop();
        cond.pop();
    }
    false
}

/// Integer linear forms whose reductions mod `p` are admissible for the
/// reduced group, with their orbit products under `g` over Z.
///
/// The mod-`p` certificate certifies the parameters over `Z_(p)`; a
/// certificate over Q is added, so the result is certified at `{ℚ, p}`.
pub fn lift_hsop_over_z(g: &MatrixGroup, p: Prime, opts: &DadeOptions) -> Result<CertifiedHsop> {
    RingDescriptor::Integers.ensure_same(g.ring())?;
    let reduced = reduce_mod_p(g, p, opts.cap)?.group;
    let forms = finite_field_forms(&reduced, p, opts)?;
    let hsop = assemble(g, &forms)?;
    let field = RingDescriptor::PrimeField(p);
    let modular = certify_over(g, &hsop.polys, field, opts.cap)?;
    if !modular.passed() {
        return Err(Error::VerificationFailed(field));
    }
    let rational = certify_over(g, &hsop.polys, RingDescriptor::Rationals, opts.cap)?;
    Ok(CertifiedHsop {
        hsop,
        certificates: vec![rational, modular],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::close_group;
    use crate::linalg::ExactMatrix;

    fn group(ring: RingDescriptor, n: usize, gens: &[Vec<Vec<i64>>]) -> MatrixGroup {
        let mats: Vec<ExactMatrix> = gens.iter().map(|g| ExactMatrix::from_i64_rows(ring, g).unwrap()).collect();
        close_group(ring, n, &mats, DEFAULT_CAP).unwrap()
    }

    fn polys(ring: RingDescriptor, n: usize, texts: &[&str]) -> Vec<Polynomial> {
        texts.iter().map(|t| Polynomial::parse(t, ring, n).unwrap()).collect()
    }

    #[test]
    fn swap_certificate() {
        let q = RingDescriptor::Rationals;
        let g = group(q, 2, &[vec![vec![0, 1], vec![1, 0]]]);
        let c = verify_hsop(&g, &polys(q, 2, &["x1*x2", "2*x1^2 + 5*x1*x2 + 2*x2^2"])).unwrap();
        assert_eq!(c.quotient_dims, vec![1, 2, 1, 0]);
        assert_eq!(c.verdict, Verdict::Hsop);
        assert!(c.regular_sequence);
    }

    #[test]
    fn repeated_element_is_not_hsop() {
        let q = RingDescriptor::Rationals;
        let g = group(q, 2, &[]);
        let c = verify_hsop(&g, &polys(q, 2, &["x1^2", "x1^2"])).unwrap();
        assert_eq!(c.verdict, Verdict::NotHsop);
        assert!(c.quotient_dims[3] > 0);
        assert!(!c.regular_sequence);
    }

    #[test]
    fn variables_over_f2() {
        let f2 = RingDescriptor::prime_field(2).unwrap();
        let g = group(f2, 2, &[]);
        let c = verify_hsop(&g, &polys(f2, 2, &["x1", "x2"])).unwrap();
        assert_eq!(c.quotient_dims, vec![1, 0]);
        assert!(c.passed());
    }

    #[test]
    fn verify_rejects_bad_input() {
        let q = RingDescriptor::Rationals;
        let g = group(q, 2, &[vec![vec![0, 1], vec![1, 0]]]);
        assert!(matches!(verify_hsop(&g, &polys(q, 2, &["x1^2", "x2^2"])), Err(Error::NotInvariant(_))));
        assert!(matches!(verify_hsop(&g, &polys(q, 2, &["x1*x2"])), Err(Error::WrongCount { .. })));
        assert!(matches!(
            verify_hsop(&g, &polys(q, 2, &["x1*x2", "x1 + x2 + x1^2 + x2^2"])),
            Err(Error::NotHomogeneous(_))
        ));
        let z = group(RingDescriptor::Integers, 2, &[]);
        assert!(matches!(
            verify_hsop(&z, &polys(RingDescriptor::Integers, 2, &["x1", "x2"])),
            Err(Error::NonFieldRing(_))
        ));
    }

    #[test]
    fn dade_for_sign_group() {
        let q = RingDescriptor::Rationals;
        let g = group(q, 2, &[vec![vec![-1, 0], vec![0, -1]]]);
        let h = dade_hsop(&g, &DadeOptions::default()).unwrap();
        let printed: Vec<String> = h.hsop.polys.iter().map(ToString::to_string).collect();
        assert_eq!(printed, vec!["-x1^2", "-x2^2"]);
        assert_eq!(h.certificates[0].quotient_dims, vec![1, 2, 1, 0]);
    }

    #[test]
    fn dade_for_trivial_group() {
        let z = RingDescriptor::Integers;
        let g = group(z, 2, &[]);
        let h = dade_hsop(&g, &DadeOptions::default()).unwrap();
        assert_eq!(h.hsop.degrees, vec![1, 1]);
        assert_eq!(h.certificates[0].quotient_dims, vec![1, 0]);
    }

    #[test]
    fn dade_swap_with_primes() {
        let z = RingDescriptor::Integers;
        let g = group(z, 2, &[vec![vec![0, 1], vec![1, 0]]]);
        let opts = DadeOptions {
            primes: vec![Prime::new(2).unwrap(), Prime::new(3).unwrap()],
            ..DadeOptions::default()
        };
        let h = dade_hsop(&g, &opts).unwrap();
        assert_eq!(h.hsop.degrees, vec![2, 2]);
        assert!(h.all_passed());
        assert_eq!(h.certified_at(), "{ℚ, 2, 3}");
    }

    #[test]
    fn lift_for_sign_group_mod_5() {
        let z = RingDescriptor::Integers;
        let g = group(z, 2, &[vec![vec![-1, 0], vec![0, -1]]]);
        let h = lift_hsop_over_z(&g, Prime::new(5).unwrap(), &DadeOptions::default()).unwrap();
        let printed: Vec<String> = h.hsop.polys.iter().map(ToString::to_string).collect();
        assert_eq!(printed, vec!["-x1^2", "-x2^2"]);
        assert_eq!(h.certified_at(), "{ℚ, 5}");
    }

    #[test]
    fn series_of_complete_intersection() {
        assert_eq!(complete_intersection_series(2, &[2, 2], 3), vec![1, 2, 1, 0]);
        assert_eq!(complete_intersection_series(2, &[], 3), vec![1, 2, 3, 4]);
    }
}
