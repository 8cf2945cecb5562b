//! Laurent polynomials over `Z/mZ`.
//!
//! A [`LaurentPoly`] is a finitely supported map from integer exponents to
//! nonzero residues. Besides the ring operations this module provides the
//! p-aware positive/negative degrees and the integrality test over the base
//! ring: `f` is integral over `Z/mZ` exactly when its reduction modulo every
//! prime `p | m` is a constant.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::modring::{add_mod, mul_mod, Modulus, Residue};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    m: u64,
    // invariant: no stored value is zero, every value < m
    coeffs: BTreeMap<i64, u64>,
}

impl LaurentPoly {
    pub fn zero(m: u64) -> Self {
        Self {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(m: u64) -> Self {
        Self::constant(1, m)
    }

    pub fn constant(c: i64, m: u64) -> Self {
        Self::monomial(c, 0, m)
    }

    /// `c·x^e`.
    pub fn monomial(c: i64, e: i64, m: u64) -> Self {
        Self::from_terms(m, [(e, c)])
    }

    /// The indeterminate `x`.
    pub fn x(m: u64) -> Self {
        Self::monomial(1, 1, m)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and coefficients reduced mod `m`.
    pub fn from_terms(m: u64, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            let c = Residue::new(c, m).value();
            let entry = coeffs.entry(e).or_insert(0u64);
            *entry = add_mod(*entry, c, m);
        }
        coeffs.retain(|_, c| *c != 0);
        Self { m, coeffs }
    }

    pub fn from_residue(r: Residue) -> Self {
        Self::constant(r.value() as i64, r.modulus())
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero monomials.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, Residue)> + '_ {
        self.coeffs
            .iter()
            .map(|(&e, &c)| (e, Residue::from_canonical(c, self.m)))
    }

    pub fn coeff(&self, e: i64) -> Residue {
        Residue::from_canonical(self.coeffs.get(&e).copied().unwrap_or(0), self.m)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.m == rhs.m {
            Ok(())
        } else {
            Err(Error::IncompatibleRings {
                left: self.m,
                right: rhs.m,
            })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.plus(rhs))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.minus(rhs))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.times(rhs))
    }

    pub fn scale(&self, c: Residue) -> Result<Self> {
        if c.modulus() != self.m {
            return Err(Error::IncompatibleRings {
                left: self.m,
                right: c.modulus(),
            });
        }
        let mut coeffs = BTreeMap::new();
        for (&e, &v) in &self.coeffs {
            let w = mul_mod(v, c.value(), self.m);
            if w != 0 {
                coeffs.insert(e, w);
            }
        }
        Ok(Self { m: self.m, coeffs })
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Coefficientwise reduction into `Z/qZ` for any divisor `q ≥ 2` of `m`.
    pub fn reduce(&self, q: u64) -> Result<Self> {
        if q < 2 || !self.m.is_multiple_of(q) {
            return Err(Error::NotAPrimeDivisor {
                prime: q,
                modulus: self.m,
            });
        }
        Ok(Self {
            m: q,
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(&e, &c)| (c % q != 0).then_some((e, c % q)))
                .collect(),
        })
    }

    fn check_prime(&self, p: u64) -> Result<()> {
        let modulus = Modulus::new(self.m)?;
        if modulus.divides(p) {
            Ok(())
        } else {
            Err(Error::NotAPrimeDivisor {
                prime: p,
                modulus: self.m,
            })
        }
    }

    /// Reduction modulo a prime `p` dividing `m`, as a polynomial over `Z/pZ`.
    pub fn reduce_mod_prime(&self, p: u64) -> Result<Self> {
        self.check_prime(p)?;
        self.reduce(p)
    }

    /// Largest positive exponent whose coefficient is not a multiple of `p`, or 0.
    pub fn pos_degree(&self, p: u64) -> Result<i64> {
        self.check_prime(p)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .find(|(&e, &c)| e > 0 && c % p != 0)
            .map_or(0, |(&e, _)| e))
    }

    /// Smallest negative exponent whose coefficient is not a multiple of `p`, or 0.
    pub fn neg_degree(&self, p: u64) -> Result<i64> {
        self.check_prime(p)?;
        Ok(self
            .coeffs
            .iter()
            .find(|(&e, &c)| e < 0 && c % p != 0)
            .map_or(0, |(&e, _)| e))
    }

    /// `max(deg⁺, -deg⁻)` with respect to `p`.
    pub fn p_degree(&self, p: u64) -> Result<i64> {
        Ok(self.pos_degree(p)?.max(-self.neg_degree(p)?))
    }

    /// Whether `f` satisfies a monic polynomial with coefficients in `Z/mZ`.
    pub fn is_integral_over_base(&self) -> bool {
        let modulus = Modulus::new(self.m).expect("modulus at least 2");
        let integral = modulus.primes().all(|p| self.non_constant_mod(p).is_none());
        integral
    }

    /// Some exponent `e ≠ 0` carrying a coefficient not divisible by `p`.
    pub(crate) fn non_constant_mod(&self, p: u64) -> Option<i64> {
        self.coeffs
            .iter()
            .find(|(&e, &c)| e != 0 && c % p != 0)
            .map(|(&e, _)| e)
    }

    /// For integral `f`, the constant `c` with `(f - c)` nilpotent; `None` otherwise.
    ///
    /// Since `f ≡ c_p (mod p)` for every `p | m`, the constant term works:
    /// `f - f_0` has all coefficients divisible by the radical of `m`.
    pub fn integral_constant(&self) -> Option<Residue> {
        self.is_integral_over_base().then(|| self.coeff(0))
    }
}

impl Ring for LaurentPoly {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.m
    }

    fn zero(ctx: &u64) -> Self {
        LaurentPoly::zero(*ctx)
    }

    fn one(ctx: &u64) -> Self {
        LaurentPoly::one(*ctx)
    }

    fn from_int(ctx: &u64, value: i64) -> Self {
        LaurentPoly::constant(value, *ctx)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &rhs.coeffs {
            let entry = coeffs.entry(e).or_insert(0);
            *entry = add_mod(*entry, c, self.m);
            if *entry == 0 {
                coeffs.remove(&e);
            }
        }
        Self { m: self.m, coeffs }
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        let m = self.m;
        let (Some(lo_a), Some(hi_a), Some(lo_b), Some(hi_b)) = (
            self.min_exponent(),
            self.max_exponent(),
            rhs.min_exponent(),
            rhs.max_exponent(),
        ) else {
            return Self::zero(m);
        };
        let lo = lo_a + lo_b;
        let span = (hi_a - lo_a + hi_b - lo_b + 1) as usize;
        let pairs = self.len() * rhs.len();
        if span <= 4 * pairs + 64 {
            // dense accumulator over the exponent window
            let mut acc = vec![0u64; span];
            for (&ea, &ca) in &self.coeffs {
                for (&eb, &cb) in &rhs.coeffs {
                    let slot = &mut acc[(ea + eb - lo) as usize];
                    *slot = add_mod(*slot, mul_mod(ca, cb, m), m);
                }
            }
            let coeffs = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(i, c)| (lo + i as i64, c))
                .collect();
            Self { m, coeffs }
        } else {
            let mut coeffs = BTreeMap::new();
            for (&ea, &ca) in &self.coeffs {
                for (&eb, &cb) in &rhs.coeffs {
                    let slot = coeffs.entry(ea + eb).or_insert(0u64);
                    *slot = add_mod(*slot, mul_mod(ca, cb, m), m);
                }
            }
            coeffs.retain(|_, c| *c != 0);
            Self { m, coeffs }
        }
    }

    fn negated(&self) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, self.m - c)).collect(),
        }
    }

    fn weight(&self) -> usize {
        self.coeffs.len()
    }
}

/// Renders `c_e x^e + …` with exponents descending, e.g. `3x^2 + x + 2 + x^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "{c}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the textual form produced by `Display`. Coefficients may be any
    /// integers (they are reduced mod `m`); `*` between coefficient and `x` is allowed.
    pub fn parse(s: &str, m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty Laurent polynomial".into()));
        }
        let mut terms = Vec::new();
        for raw in compact.split('+') {
            terms.push(
                parse_term(raw)
                    .ok_or_else(|| Error::Parse(format!("bad Laurent term {raw:?} in {s:?}")))?,
            );
        }
        Ok(Self::from_terms(m, terms))
    }
}

fn parse_term(raw: &str) -> Option<(i64, i64)> {
    if raw.is_empty() {
        return None;
    }
    let Some(xpos) = raw.find('x') else {
        return Some((0, raw.parse().ok()?));
    };
    let coeff_part = raw[..xpos].trim_end_matches('*');
    let coeff = match coeff_part {
        "" => 1,
        "-" => -1,
        c => c.parse().ok()?,
    };
    let rest = &raw[xpos + 1..];
    let exponent = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')?.parse().ok()?
    };
    Some((exponent, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str, m: u64) -> LaurentPoly {
        LaurentPoly::parse(s, m).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(lp("1 + x", 2).times(&lp("1 + x", 2)), lp("1 + x^2", 2));
        assert_eq!(lp("x^-1 + x", 2).pow(2), lp("x^-2 + x^2", 2));
        let f = lp("3x^2 + 2 + x^-1", 4);
        assert_eq!(f.times(&LaurentPoly::one(4)), f);
        assert_eq!(
            lp("x", 4).try_mul(&lp("x", 6)),
            Err(Error::IncompatibleRings { left: 4, right: 6 })
        );
    }

    #[test]
    fn sparse_and_dense_products_agree() {
        let f = LaurentPoly::from_terms(7, [(-500, 3), (0, 1), (700, 5)]);
        let g = LaurentPoly::from_terms(7, [(-3, 2), (1000, 6)]);
        let naive = LaurentPoly::from_terms(
            7,
            f.terms().flat_map(|(ea, ca)| {
                g.terms()
                    .map(move |(eb, cb)| (ea + eb, (ca.value() * cb.value()) as i64))
            }),
        );
        assert_eq!(f.times(&g), naive);
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(lp("2 + 3x", 4).reduce_mod_prime(2).unwrap(), lp("x", 2));
        assert!(lp("2x", 4).reduce_mod_prime(2).unwrap().is_zero());
        assert_eq!(lp("5 + 6x", 12).reduce_mod_prime(3).unwrap(), lp("2", 3));
        assert_eq!(
            lp("x", 4).reduce_mod_prime(3),
            Err(Error::NotAPrimeDivisor {
                prime: 3,
                modulus: 4
            })
        );
        assert!(lp("x", 12).reduce_mod_prime(4).is_err());
    }

    #[test]
    fn degree_examples() {
        let f = lp("2x^3 + x^2 + x^-1", 4);
        assert_eq!(f.pos_degree(2).unwrap(), 2);
        assert_eq!(f.neg_degree(2).unwrap(), -1);
        let c = lp("5", 4);
        assert_eq!((c.pos_degree(2).unwrap(), c.neg_degree(2).unwrap()), (0, 0));
        assert_eq!(lp("2x", 4).pos_degree(2).unwrap(), 0);
        assert!(lp("x", 4).pos_degree(3).is_err());
    }

    #[test]
    fn integrality_examples() {
        assert!(!lp("x", 4).is_integral_over_base());
        assert!(lp("1 + 2x", 4).is_integral_over_base());
        assert!(lp("3", 12).is_integral_over_base());
        assert!(!lp("3 + 4x", 12).is_integral_over_base());
        assert!(lp("3 + 6x", 12).is_integral_over_base());
        // (f - 1)^2 = 4x^2 = 0, and the powers of f cycle
        let f = lp("1 + 2x", 4);
        assert_eq!(f.pow(2), LaurentPoly::one(4));
        assert_eq!(f.integral_constant().unwrap().value(), 1);
    }

    #[test]
    fn rendering_and_parsing() {
        let f = LaurentPoly::from_terms(5, [(2, 3), (1, 1), (0, 2), (-1, 1), (-2, 4)]);
        assert_eq!(f.to_string(), "3x^2 + x + 2 + x^-1 + 4x^-2");
        assert_eq!(LaurentPoly::parse(&f.to_string(), 5).unwrap(), f);
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
        assert_eq!(lp("0", 3), LaurentPoly::zero(3));
        assert_eq!(
            lp("2*x^-3 + -1", 5),
            LaurentPoly::from_terms(5, [(-3, 2), (0, 4)])
        );
        assert!(LaurentPoly::parse("x^", 3).is_err());
        assert!(LaurentPoly::parse("1 + + x", 3).is_err());
        assert!(LaurentPoly::parse("", 3).is_err());
    }

    #[test]
    fn normalization_drops_zero_coefficients() {
        let f = LaurentPoly::from_terms(4, [(1, 2), (1, 2), (0, 4)]);
        assert!(f.is_zero());
        let g = lp("x + 1", 3);
        assert!(g.minus(&g).is_zero());
        assert_eq!(g.scale(Residue::new(3, 3)).unwrap(), LaurentPoly::zero(3));
    }
}
