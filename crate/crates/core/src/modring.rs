//! Exact arithmetic in `Z/mZ`: factorization of the modulus, residues,
//! CRT splitting into prime-power components and the nilpotency test.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// A prime power `p^k` occurring in a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// The base ring `Z/mZ` together with the prime factorization of `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u64,
    factors: Vec<PrimePower>,
}

/// Factors `m ≥ 2` by trial division.
pub fn factorize(m: u64) -> Result<Modulus> {
    Modulus::new(m)
}

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        let mut factors = Vec::new();
        let mut rest = m;
        let mut d = 2u64;
        while d.saturating_mul(d) <= rest {
            if rest.is_multiple_of(d) {
                let mut exponent = 0;
                while rest.is_multiple_of(d) {
                    rest /= d;
                    exponent += 1;
                }
                factors.push(PrimePower { prime: d, exponent });
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push(PrimePower {
                prime: rest,
                exponent: 1,
            });
        }
        Ok(Self { m, factors })
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.prime)
    }

    /// Product of the distinct primes dividing `m`.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// Largest exponent in the factorization; every nilpotent residue
    /// satisfies `a^K = 0` for this `K`.
    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|f| f.exponent).max().unwrap_or(1)
    }

    pub fn divides(&self, prime: u64) -> bool {
        self.factors.iter().any(|f| f.prime == prime)
    }

    pub fn elem(&self, value: i64) -> Residue {
        Residue::new(value, self.m)
    }

    /// Components `a mod p_i^{k_i}`, one per prime-power factor.
    pub fn crt_split(&self, a: Residue) -> Result<Vec<Residue>> {
        check_same(self.m, a.m)?;
        Ok(self
            .factors
            .iter()
            .map(|f| {
                let q = f.value();
                Residue::new((a.value % q) as i64, q)
            })
            .collect())
    }

    /// Inverse of [`Modulus::crt_split`].
    pub fn crt_combine(&self, parts: &[Residue]) -> Result<Residue> {
        if parts.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} CRT components", self.factors.len()),
                found: parts.len().to_string(),
            });
        }
        let mut acc = 0u128;
        let m = self.m as u128;
        for (f, part) in self.factors.iter().zip(parts) {
            let q = f.value();
            check_same(q, part.m)?;
            let cofactor = self.m / q;
            // cofactor is a unit mod q since the factors are coprime
            let inv = mod_inverse(cofactor % q, q).expect("coprime CRT factors");
            let term = (part.value as u128 * inv as u128 % q as u128) * cofactor as u128 % m;
            acc = (acc + term) % m;
        }
        Ok(Residue {
            value: acc as u64,
            m: self.m,
        })
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.m)
    }
}

fn check_same(left: u64, right: u64) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::IncompatibleRings { left, right })
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An element of `Z/mZ`, always stored as its canonical representative in `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    m: u64,
}

impl Residue {
    /// Reduces `value` into `[0, m)`.
    pub fn new(value: i64, m: u64) -> Self {
        Self {
            value: (value as i128).rem_euclid(m as i128) as u64,
            m,
        }
    }

    pub(crate) fn from_canonical(value: u64, m: u64) -> Self {
        debug_assert!(value < m);
        Self { value, m }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        check_same(self.m, rhs.m)?;
        Ok(self.plus(&rhs))
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        check_same(self.m, rhs.m)?;
        Ok(self.minus(&rhs))
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        check_same(self.m, rhs.m)?;
        Ok(self.times(&rhs))
    }

    /// True iff some power of `self` vanishes, i.e. every prime of `m` divides the value.
    pub fn is_nilpotent(&self) -> bool {
        let modulus = Modulus::new(self.m).expect("residue modulus is at least 2");
        self.value.is_multiple_of(modulus.radical())
    }

    pub fn is_unit(&self) -> bool {
        gcd(self.value, self.m) == 1
    }

    pub fn inverse(&self) -> Option<Self> {
        mod_inverse(self.value, self.m).map(|v| Self::from_canonical(v, self.m))
    }

    /// Reduction into `Z/qZ` for a divisor `q` of `m`.
    pub fn reduce(&self, q: u64) -> Result<Self> {
        if q < 2 || !self.m.is_multiple_of(q) {
            return Err(Error::NotAPrimeDivisor {
                prime: q,
                modulus: self.m,
            });
        }
        Ok(Self::from_canonical(self.value % q, q))
    }
}

impl Ring for Residue {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.m
    }

    fn zero(ctx: &u64) -> Self {
        Self::from_canonical(0, *ctx)
    }

    fn one(ctx: &u64) -> Self {
        Self::from_canonical(1 % *ctx, *ctx)
    }

    fn from_int(ctx: &u64, value: i64) -> Self {
        Self::new(value, *ctx)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        Self::from_canonical(add_mod(self.value, rhs.value, self.m), self.m)
    }

    fn minus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.m - (rhs.value - self.value)
        };
        Self::from_canonical(v, self.m)
    }

    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        Self::from_canonical(mul_mod(self.value, rhs.value, self.m), self.m)
    }

    fn negated(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Self::from_canonical(self.m - self.value, self.m)
        }
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (if s >= m as u128 { s - m as u128 } else { s }) as u64
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

macro_rules! residue_op {
    ($tr:ident, $method:ident, $ring:ident) => {
        impl $tr for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                assert_eq!(self.m, rhs.m, "residues over different moduli");
                self.$ring(&rhs)
            }
        }
    };
}

residue_op!(Add, add, plus);
residue_op!(Sub, sub, minus);
residue_op!(Mul, mul, times);

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        self.negated()
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
