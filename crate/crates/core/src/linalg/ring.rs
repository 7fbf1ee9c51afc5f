//! Coefficient rings and their elements.
//!
//! Three rings are supported: the integers, the rationals and prime fields
//! `F_p` with `p < 2^63`. A [`Scalar`] always knows which ring it lives in;
//! mixing rings in arithmetic is an invariant violation and panics, while the
//! checked entry points (matrix and polynomial constructors) return
//! [`Error::RingMismatch`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A prime modulus, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 63) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    PrimeField(Prime),
}

impl RingDescriptor {
    pub fn prime_field(p: u64) -> Result<Self> {
        Prime::new(p).map(RingDescriptor::PrimeField)
    }

    pub fn is_field(self) -> bool {
        !matches!(self, RingDescriptor::Integers)
    }

    /// Characteristic of the ring (0 for Z and Q).
    pub fn characteristic(self) -> u64 {
        match self {
            RingDescriptor::PrimeField(p) => p.get(),
            _ => 0,
        }
    }

    /// The field a computation over this ring is certified against:
    /// Q for Z, the ring itself otherwise.
    pub fn fraction_field(self) -> RingDescriptor {
        match self {
            RingDescriptor::Integers => RingDescriptor::Rationals,
            other => other,
        }
    }

    pub fn ensure_field(self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NonFieldRing(self))
        }
    }

    pub fn ensure_same(self, other: RingDescriptor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self,
                right: other,
            })
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::PrimeField(p) => write!(f, "F_{}", p.get()),
        }
    }
}

/// An element of one of the supported rings.
///
/// Prime field values are kept in `[0, p)`; rationals are always reduced
/// with a positive denominator (guaranteed by `BigRational`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: Prime },
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

pub(crate) fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

impl Scalar {
    pub fn zero(ring: RingDescriptor) -> Scalar {
        Scalar::from_i64(ring, 0)
    }

    pub fn one(ring: RingDescriptor) -> Scalar {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: RingDescriptor, v: i64) -> Scalar {
        Scalar::from_bigint(ring, &BigInt::from(v))
    }

    pub fn from_bigint(ring: RingDescriptor, v: &BigInt) -> Scalar {
        match ring {
            RingDescriptor::Integers => Scalar::Int(v.clone()),
            RingDescriptor::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            RingDescriptor::PrimeField(p) => Scalar::Mod {
                value: bigint_mod(v, p.get()),
                modulus: p,
            },
        }
    }

    /// Builds an element from a fraction; fails when the fraction does not
    /// live in `ring` (non-integral over Z, denominator divisible by p).
    pub fn from_ratio(ring: RingDescriptor, v: &BigRational) -> Result<Scalar> {
        match ring {
            RingDescriptor::Rationals => Ok(Scalar::Rat(v.clone())),
            RingDescriptor::Integers => {
                if v.is_integer() {
                    Ok(Scalar::Int(v.to_integer()))
                } else {
                    Err(Error::Parse(format!("{v} is not an integer")))
                }
            }
            RingDescriptor::PrimeField(p) => {
                let num = bigint_mod(v.numer(), p.get());
                let den = bigint_mod(v.denom(), p.get());
                let inv = inv_mod(den, p.get())
                    .ok_or_else(|| Error::Parse(format!("{v} has no image in F_{}", p.get())))?;
                Ok(Scalar::Mod {
                    value: mul_mod(num, inv, p.get()),
                    modulus: p,
                })
            }
        }
    }

    pub fn ring(&self) -> RingDescriptor {
        match self {
            Scalar::Int(_) => RingDescriptor::Integers,
            Scalar::Rat(_) => RingDescriptor::Rationals,
            Scalar::Mod { modulus, .. } => RingDescriptor::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_negative(),
            Scalar::Rat(v) => v.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    /// Multiplicative inverse, if it exists in the ring.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Int(v) => {
                if v.is_one() || (-v).is_one() {
                    Some(Scalar::Int(v.clone()))
                } else {
                    None
                }
            }
            Scalar::Rat(v) => (!v.is_zero()).then(|| Scalar::Rat(v.recip())),
            Scalar::Mod { value, modulus } => inv_mod(*value, modulus.get()).map(|value| Scalar::Mod {
                value,
                modulus: *modulus,
            }),
        }
    }

    /// The value as a fraction (prime field residues map to their
    /// representative in `[0, p)`).
    pub fn to_ratio(&self) -> BigRational {
        match self {
            Scalar::Int(v) => BigRational::from_integer(v.clone()),
            Scalar::Rat(v) => v.clone(),
            Scalar::Mod { value, .. } => BigRational::from_integer(BigInt::from(*value)),
        }
    }

    /// Maps the element into `target` along Z -> Q, Z -> F_p or Q -> F_p.
    pub fn convert(&self, target: RingDescriptor) -> Result<Scalar> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Int(v), t) => Ok(Scalar::from_bigint(t, v)),
            (Scalar::Rat(v), t) => Scalar::from_ratio(t, v),
            (Scalar::Mod { .. }, t) => Err(Error::RingMismatch {
                left: self.ring(),
                right: t,
            }),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one(self.ring());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar ring mismatch: {} vs {}", a.ring(), b.ring())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, modulus: q }) if modulus == q => {
                let p = modulus.get();
                Scalar::Mod {
                    value: ((*a as u128 + *b as u128) % p as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, modulus: q }) if modulus == q => {
                Scalar::Mod {
                    value: mul_mod(*a, *b, modulus.get()),
                    modulus: *modulus,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus.get() - value },
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => write!(f, "{v}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Parses `"a"` or `"a/b"` into a fraction.
pub fn parse_ratio(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid number {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => text.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(RingDescriptor::prime_field(9).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = RingDescriptor::prime_field(5).unwrap();
        let a = Scalar::from_i64(f5, -1);
        assert_eq!(a, Scalar::from_i64(f5, 4));
        let b = Scalar::from_i64(f5, 3);
        assert_eq!(&a * &b, Scalar::from_i64(f5, 2));
        assert_eq!(b.inverse().unwrap(), Scalar::from_i64(f5, 2));
        assert!(Scalar::zero(f5).inverse().is_none());
    }

    #[test]
    fn rationals_stay_reduced() {
        let r = Scalar::from_ratio(RingDescriptor::Rationals, &parse_ratio("6/-4").unwrap()).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        let f7 = RingDescriptor::prime_field(7).unwrap();
        // 1/2 = 4 mod 7
        assert_eq!(r.convert(f7).unwrap(), Scalar::from_i64(f7, 2));
        assert!(Scalar::from_ratio(RingDescriptor::Integers, &parse_ratio("1/2").unwrap()).is_err());
    }

    #[test]
    fn integer_units() {
        let z = RingDescriptor::Integers;
        assert!(Scalar::from_i64(z, -1).inverse().is_some());
        assert!(Scalar::from_i64(z, 2).inverse().is_none());
    }
}
