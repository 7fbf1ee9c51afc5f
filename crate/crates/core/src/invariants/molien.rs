//! Hilbert series of the invariants in the nonmodular case,
//! `(1/|G|) sum_sigma 1/det(I - t sigma)`.
//!
//! Each term is expanded with Newton's identity `k h_k = sum_i p_i h_{k-i}`
//! where `p_i` is the i-th power sum of the eigenvalues. In characteristic
//! zero `p_i = tr(sigma^i)`. Over `F_p` with `p` coprime to `|G|` the
//! eigenvalues are lifted to complex roots of unity (Brauer lift): they are
//! located as powers of a primitive `M`-th root of unity in `GF(p^k)`, and
//! the sum is evaluated in `Q[zeta_M]` through the Galois trace.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::linalg::{ExactMatrix, RingDescriptor, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolienSeries {
    /// Coefficients of `t^0 ..= t^truncation`.
    pub coefficients: Vec<u64>,
    pub truncation: u32,
}

/// Element of the group ring `Q[Z/M]`, standing for `sum_c a_c zeta^c`.
type Cyclic = Vec<BigRational>;

fn cyclic_mul(a: &Cyclic, b: &Cyclic) -> Cyclic {
    let m = a.len();
    let mut out = vec![BigRational::zero(); m];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[(i + j) % m] += x * y;
            }
        }
    }
    out
}

/// `sum_{k=0}^{t} h_k(eigenvalues)` given power sums `p_1 ..= p_t`.
fn complete_from_power_sums(power_sums: &[Cyclic], m: usize) -> Vec<Cyclic> {
    let mut one = vec![BigRational::zero(); m];
    one[0] = BigRational::one();
    let mut h = vec![one];
    for k in 1..=power_sums.len() {
        let mut acc = vec![BigRational::zero(); m];
        for i in 1..=k {
            for (a, b) in acc.iter_mut().zip(cyclic_mul(&power_sums[i - 1], &h[k - i])) {
                *a += b;
            }
        }
        let k = BigRational::from_integer(BigInt::from(k));
        h.push(acc.into_iter().map(|x| x / &k).collect());
    }
    h
}

fn factorize(mut m: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes
}

fn totient(m: u64) -> u64 {
    factorize(m).iter().fold(m, |acc, p| acc / p * (p - 1))
}

fn mobius(m: u64) -> i64 {
    let primes = factorize(m);
    if primes.iter().product::<u64>() != m {
        return 0;
    }
    if primes.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The rational number `sum_c a_c zeta_M^c`, assuming it is rational: the
/// average of its Galois conjugates, via Ramanujan sums
/// `sum_{b in (Z/M)^*} zeta^{bc} = phi(M) mu(M/g) / phi(M/g)`, `g = gcd(c, M)`.
fn rational_value(a: &Cyclic) -> BigRational {
    let m = a.len() as u64;
    let mut total = BigRational::zero();
    for (c, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let q = m / (c as u64).gcd(&m);
        let weight = BigRational::new(BigInt::from(mobius(q)), BigInt::from(totient(q)));
        total += x * weight;
    }
    total
}

/// Molien coefficients in degrees `0 ..= truncation`.
pub fn molien_series(g: &MatrixGroup, truncation: u32) -> Result<MolienSeries> {
    let order = g.order();
    let t = truncation as usize;
    let (m, per_element) = match g.ring() {
        RingDescriptor::PrimeField(p) => {
            let p = p.get();
            if (order as u64) % p == 0 {
                return Err(Error::ModularCharacteristic(p));
            }
            modular_power_sums(g, p, t)?
        }
        _ => (1, rational_power_sums(g, t)),
    };
    let mut totals = vec![vec![BigRational::zero(); m]; t + 1];
    for sums in per_element {
        for (total, h) in totals.iter_mut().zip(complete_from_power_sums(&sums, m)) {
            for (a, b) in total.iter_mut().zip(h) {
                *a += b;
            }
        }
    }
    let order = BigRational::from_integer(BigInt::from(order));
    let coefficients = totals
        .iter()
        .map(|total| {
            let c = rational_value(total) / &order;
            assert!(c.is_integer(), "Molien coefficient {c} is not an integer");
            c.to_integer().to_u64().expect("nonnegative coefficient")
        })
        .collect();
    Ok(MolienSeries {
        coefficients,
        truncation,
    })
}

fn trace(m: &ExactMatrix) -> Scalar {
    (1..m.rows()).fold(m.get(0, 0).clone(), |acc, i| &acc + m.get(i, i))
}

fn rational_power_sums(g: &MatrixGroup, t: usize) -> Vec<Vec<Cyclic>> {
    g.elements()
        .iter()
        .map(|s| {
            let mut power = s.matrix().clone();
            let mut sums = Vec::with_capacity(t);
            for i in 1..=t {
                if i > 1 {
                    power = power.mul(s.matrix()).expect("square");
                }
                sums.push(vec![trace(&power).to_ratio()]);
            }
            sums
        })
        .collect()
}

/// Power sums of the lifted eigenvalues, for every element, in `Q[Z/M]`
/// with `M` the exponent of the group.
fn modular_power_sums(g: &MatrixGroup, p: u64, t: usize) -> Result<(usize, Vec<Vec<Cyclic>>)> {
    let orders: Vec<u64> = g.elements().iter().map(|s| element_order(s.matrix())).collect();
    let m = orders.iter().fold(1u64, |a, b| a.lcm(b));
    let field = GaloisField::with_roots_of_unity(p, m);
    let omega = field.primitive_root(m);
    let n = g.dimension();
    let mut out = Vec::with_capacity(g.order());
    for s in g.elements() {
        let entries: Vec<u64> = s
            .matrix()
            .entries()
            .iter()
            .map(|x| match x {
                Scalar::Mod { value, .. } => *value,
                _ => unreachable!("group over F_p"),
            })
            .collect();
        let mut exponents = Vec::with_capacity(n);
        let mut root = field.one();
        for a in 0..m {
            let mult = n - field.rank_shifted(&entries, n, &root);
            exponents.extend(std::iter::repeat(a).take(mult));
            root = field.mul(&root, &omega);
        }
        assert_eq!(exponents.len(), n, "element of order prime to p is diagonalizable");
        let sums = (1..=t as u64)
            .map(|i| {
                let mut v = vec![BigRational::zero(); m as usize];
                for &a in &exponents {
                    v[((a * i) % m) as usize] += BigRational::one();
                }
                v
            })
            .collect();
        out.push(sums);
    }
    Ok((m as usize, out))
}

fn element_order(m: &ExactMatrix) -> u64 {
    let mut power = m.clone();
    let mut k = 1;
    while !power.is_identity() {
        power = power.mul(m).expect("square");
        k += 1;
    }
    k
}

/// `GF(p^k) = F_p[x]/(f)`; elements are coefficient vectors of length `k`.
struct GaloisField {
    p: u64,
    modulus: Vec<u64>,
}

type Gf = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_u64(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i128, 1i128, p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

/// Remainder of `a` modulo `b` over `F_p`; `b` nonzero and trimmed.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let lead_inv = inv_u64(*b.last().expect("nonzero"), p);
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = mulmod(*a.last().expect("nonempty"), lead_inv, p);
        for (i, &c) in b.iter().enumerate() {
            let x = &mut a[shift + i];
            *x = (*x + p - mulmod(q, c, p)) % p;
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    out
}

impl GaloisField {
    /// Smallest extension of `F_p` containing the `m`-th roots of unity.
    fn with_roots_of_unity(p: u64, m: u64) -> Self {
        let mut k = 1u32;
        let mut pk = p % m;
        while pk != 1 % m {
            pk = mulmod(pk, p, m);
            k += 1;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64 ^ p);
        loop {
            let mut f: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            f.push(1);
            let field = GaloisField { p, modulus: f };
            if field.modulus_irreducible() {
                return field;
            }
        }
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Ben-Or: `gcd(f, x^{p^i} - x) = 1` for `i <= k/2`.
    fn modulus_irreducible(&self) -> bool {
        let k = self.degree();
        if k == 1 {
            return true;
        }
        let p = self.p;
        let x: Gf = self.reduce(vec![0, 1]);
        let mut h = x.clone();
        for _ in 0..k / 2 {
            h = self.pow(&h, &BigUint::from(p));
            let mut diff = h.clone();
            for (d, c) in diff.iter_mut().zip(&x) {
                *d = (*d + p - c) % p;
            }
            if poly_gcd(self.modulus.clone(), diff, p).len() != 1 {
                return false;
            }
        }
        true
    }

    fn reduce(&self, v: Vec<u64>) -> Gf {
        let mut r = poly_rem(v, &self.modulus, self.p);
        r.resize(self.degree(), 0);
        r
    }

    fn one(&self) -> Gf {
        self.reduce(vec![1])
    }

    fn is_zero(a: &Gf) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        self.reduce(poly_mul(a, b, self.p))
    }

    fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    fn pow(&self, a: &Gf, e: &BigUint) -> Gf {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    fn size_minus_one(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32) - 1u32
    }

    fn inverse(&self, a: &Gf) -> Gf {
        self.pow(a, &(self.size_minus_one() - 1u32))
    }

    /// An element of multiplicative order exactly `m`.
    fn primitive_root(&self, m: u64) -> Gf {
        let cofactor = self.size_minus_one() / m;
        let primes = factorize(m);
        let mut rng = ChaCha8Rng::seed_from_u64(m);
        loop {
            let a: Gf = (0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect();
            if Self::is_zero(&a) {
                continue;
            }
            let w = self.pow(&a, &cofactor);
            if primes.iter().all(|&r| self.pow(&w, &BigUint::from(m / r)) != self.one()) {
                return w;
            }
        }
    }

    /// Rank of `sigma - lambda I` for an `n x n` matrix over `F_p`.
    fn rank_shifted(&self, entries: &[u64], n: usize, lambda: &Gf) -> usize {
        let mut rows: Vec<Vec<Gf>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x = self.reduce(vec![entries[i * n + j]]);
                        if i == j {
                            self.sub(&x, lambda)
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !Self::is_zero(&rows[r][col])) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inverse(&rows[rank][col]);
            for r in 0..n {
                if r != rank && !Self::is_zero(&rows[r][col]) {
                    let factor = self.mul(&rows[r][col], &inv);
                    for c in col..n {
                        let t = self.mul(&factor, &rows[rank][c]);
                        rows[r][c] = self.sub(&rows[r][c], &t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_group, DEFAULT_CAP};

    fn group(ring: RingDescriptor, n: usize, gens: &[Vec<Vec<i64>>]) -> MatrixGroup {
        let mats: Vec<ExactMatrix> = gens.iter().map(|g| ExactMatrix::from_i64_rows(ring, g).unwrap()).collect();
        close_group(ring, n, &mats, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn rational_examples() {
        let q = RingDescriptor::Rationals;
        let pm = group(q, 2, &[vec![vec![-1, 0], vec![0, -1]]]);
        assert_eq!(molien_series(&pm, 4).unwrap().coefficients, vec![1, 0, 3, 0, 5]);
        let trivial = group(q, 2, &[]);
        assert_eq!(molien_series(&trivial, 4).unwrap().coefficients, vec![1, 2, 3, 4, 5]);
        let swap = group(q, 2, &[vec![vec![0, 1], vec![1, 0]]]);
        assert_eq!(molien_series(&swap, 4).unwrap().coefficients, vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn modular_field_rejected() {
        let f2 = RingDescriptor::prime_field(2).unwrap();
        let swap = group(f2, 2, &[vec![vec![0, 1], vec![1, 0]]]);
        assert_eq!(molien_series(&swap, 3), Err(Error::ModularCharacteristic(2)));
    }

    #[test]
    fn brauer_lift_matches_characteristic_zero() {
        // C3 rotation: eigenvalues are primitive cube roots of unity, which
        // live in F_25 but not in F_5
        let rot = vec![vec![0, -1], vec![1, -1]];
        let q = molien_series(&group(RingDescriptor::Rationals, 2, &[rot.clone()]), 8).unwrap();
        for p in [5, 7, 11] {
            let fp = RingDescriptor::prime_field(p).unwrap();
            assert_eq!(molien_series(&group(fp, 2, &[rot.clone()]), 8).unwrap(), q, "p = {p}");
        }
    }

    #[test]
    fn ramanujan_trace() {
        // zeta_3 + zeta_3^2 = -1
        let v = vec![BigRational::zero(), BigRational::one(), BigRational::one()];
        assert_eq!(rational_value(&v), -BigRational::one());
    }
}
