//! Finiteness of `{A⁰, A¹, A², …}` for square matrices over `(Z/mZ)[x, x⁻¹]`.
//!
//! The exact decision is coefficient integrality of `χ_A`. Orbit detection
//! and the `t^{2m} - t^m` divisibility witness are semi-decisions that
//! confirm a finite verdict; they run under a [`Budget`] and report
//! exhaustion as indeterminate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::modring::Modulus;
use crate::polymat::{char_poly, CharPoly, RingMatrix, UPoly};
use crate::ring::Ring;

pub type LaurentMatrix = RingMatrix<LaurentPoly>;

/// Limits for the enumeration routes.
///
/// `max_multiplications` bounds the number of products. `max_terms` bounds the
/// total number of stored coefficients in one iterate: when powers are
/// infinite their entries grow linearly in the exponent, so without this
/// ceiling 10^5 exact products could cost on the order of 10^12 coefficient
/// operations before the step budget runs out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_multiplications: u64,
    pub max_terms: usize,
}

impl Budget {
    pub const DEFAULT_MULTIPLICATIONS: u64 = 100_000;
    pub const DEFAULT_TERMS: usize = 1024;

    pub fn new(max_multiplications: u64) -> Self {
        Self {
            max_multiplications,
            max_terms: Self::DEFAULT_TERMS,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MULTIPLICATIONS)
    }
}

/// The rho shape of `A⁰, A¹, …`: `A^{q+c} = A^q` with `q`, `c` minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitShape {
    pub preperiod: u64,
    pub period: u64,
}

impl OrbitShape {
    /// `|{A⁰, A¹, …}| = q + c`.
    pub fn size(&self) -> u64 {
        self.preperiod + self.period
    }

    /// Smallest positive multiple `m` of the period with `m ≥ q`, so `A^m = A^{2m}`.
    pub fn idempotent_exponent(&self) -> u64 {
        let c = self.period;
        c * self.preperiod.max(1).div_ceil(c)
    }
}

/// Why enumeration stopped without an answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exhaustion {
    Multiplications { used: u64 },
    Terms { used: u64, terms: usize },
}

impl std::fmt::Display for Exhaustion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exhaustion::Multiplications { used } => {
                write!(f, "multiplication budget exhausted after {used} products")
            }
            Exhaustion::Terms { used, terms } => write!(
                f,
                "representation ceiling exceeded ({terms} coefficients) after {used} products"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum OrbitOutcome {
    Found {
        shape: OrbitShape,
        multiplications: u64,
    },
    Indeterminate(Exhaustion),
}

impl OrbitOutcome {
    pub fn shape(&self) -> Option<OrbitShape> {
        match self {
            OrbitOutcome::Found { shape, .. } => Some(*shape),
            OrbitOutcome::Indeterminate(_) => None,
        }
    }
}

/// The first coefficient of `χ_A` that is not integral over `Z/mZ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonIntegralCoefficient {
    /// Index `k` of the coefficient `a_k` of `t^k`.
    pub index: usize,
    /// A prime `p | m` modulo which `a_k` is not constant.
    pub prime: u64,
    /// An exponent `e ≠ 0` whose coefficient in `a_k` is nonzero mod `p`.
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitenessVerdict {
    pub finite: bool,
    /// Orbit shape, when the verdict was confirmed by enumeration.
    pub witness: Option<OrbitShape>,
    /// Set when `finite` is false.
    pub reason: Option<NonIntegralCoefficient>,
}

fn require_square(a: &LaurentMatrix) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", a.rows(), a.cols()),
        })
    }
}

/// First non-integral coefficient of a characteristic polynomial, if any.
pub fn non_integral_coefficient(chi: &CharPoly<LaurentPoly>) -> Option<NonIntegralCoefficient> {
    let modulus = Modulus::new(chi.ctx()).expect("modulus at least 2");
    let n = chi.degree();
    for (index, a) in chi.coeffs()[..n].iter().enumerate() {
        for prime in modulus.primes() {
            if let Some(exponent) = a.non_constant_mod(prime) {
                return Some(NonIntegralCoefficient {
                    index,
                    prime,
                    exponent,
                });
            }
        }
    }
    None
}

/// Exact decision: finite iff every coefficient of `χ_A` is integral.
pub fn decide_finite_powers(a: &LaurentMatrix) -> Result<FinitenessVerdict> {
    require_square(a)?;
    let reason = non_integral_coefficient(&char_poly(a)?);
    Ok(FinitenessVerdict {
        finite: reason.is_none(),
        witness: None,
        reason,
    })
}

/// [`decide_finite_powers`], additionally enumerating the orbit when finite.
pub fn decide_finite_powers_witnessed(
    a: &LaurentMatrix,
    budget: Budget,
) -> Result<(FinitenessVerdict, Option<OrbitOutcome>)> {
    let mut verdict = decide_finite_powers(a)?;
    if !verdict.finite {
        return Ok((verdict, None));
    }
    let outcome = detect_orbit(a, budget)?;
    verdict.witness = outcome.shape();
    Ok((verdict, Some(outcome)))
}

/// Brent cycle detection on `x_0, f(x_0), f(f(x_0)), …`, counting each `f` call
/// against the budget and stopping when `weight` exceeds the term ceiling.
fn brent<T: PartialEq + Clone>(
    x0: T,
    f: impl Fn(&T) -> T,
    weight: impl Fn(&T) -> usize,
    budget: Budget,
) -> std::result::Result<(OrbitShape, u64), Exhaustion> {
    let mut used = 0u64;
    let mut step = |x: &T| -> std::result::Result<T, Exhaustion> {
        if used >= budget.max_multiplications {
            return Err(Exhaustion::Multiplications { used });
        }
        used += 1;
        let y = f(x);
        let w = weight(&y);
        if w > budget.max_terms {
            return Err(Exhaustion::Terms { used, terms: w });
        }
        Ok(y)
    };
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = x0.clone();
    let mut hare = step(&x0)?;
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = step(&hare)?;
        lam += 1;
    }
    let mut tortoise = x0.clone();
    let mut hare = x0;
    for _ in 0..lam {
        hare = step(&hare)?;
    }
    let mut mu = 0u64;
    while tortoise != hare {
        tortoise = step(&tortoise)?;
        hare = step(&hare)?;
        mu += 1;
    }
    Ok((
        OrbitShape {
            preperiod: mu,
            period: lam,
        },
        used,
    ))
}

/// Brent cycle detection on `A⁰ = I, A, A², …` by structural equality.
pub fn detect_orbit(a: &LaurentMatrix, budget: Budget) -> Result<OrbitOutcome> {
    let n = require_square(a)?;
    if budget.max_multiplications == 0 {
        return Err(Error::BudgetExceeded("budget must be at least 1".into()));
    }
    let id = RingMatrix::identity(*a.ctx(), n);
    Ok(
        match brent(id, |x| x.mul_unchecked(a), RingMatrix::weight, budget) {
            Ok((shape, multiplications)) => OrbitOutcome::Found {
                shape,
                multiplications,
            },
            Err(e) => OrbitOutcome::Indeterminate(e),
        },
    )
}

fn t_poly(m: u64) -> UPoly<LaurentPoly> {
    UPoly::monomial(LaurentPoly::one(m), 1)
}

/// Some `m > 0` with `χ_A | t^{2m} - t^m`, found by cycle detection on
/// `t^k mod χ_A`. `None` when the budget runs out.
pub fn divisibility_witness(a: &LaurentMatrix, budget: Budget) -> Result<Option<u64>> {
    require_square(a)?;
    let chi = char_poly(a)?.to_poly();
    divisibility_witness_for(&chi, budget)
}

/// [`divisibility_witness`] for a given monic polynomial.
pub fn divisibility_witness_for(chi: &UPoly<LaurentPoly>, budget: Budget) -> Result<Option<u64>> {
    if !chi.is_monic() {
        return Err(Error::NotMonic);
    }
    let m = *chi.ctx();
    let t = t_poly(m);
    let one = UPoly::monomial(LaurentPoly::one(m), 0).rem_monic(chi)?;
    let step = |r: &UPoly<LaurentPoly>| r.times(&t).rem_monic(chi).expect("monic divisor");
    let weight = |r: &UPoly<LaurentPoly>| r.coeffs().iter().map(Ring::weight).sum();
    match brent(one, step, weight, budget) {
        Ok((shape, _)) => {
            let exp = shape.idempotent_exponent();
            debug_assert!(verify_divisibility(chi, exp)?);
            Ok(Some(exp))
        }
        Err(_) => Ok(None),
    }
}

/// Whether `(t^{2m} - t^m) mod χ` is zero, by one explicit division.
pub fn verify_divisibility(chi: &UPoly<LaurentPoly>, m: u64) -> Result<bool> {
    let ctx = *chi.ctx();
    let one = LaurentPoly::one(ctx);
    let k = usize::try_from(m).map_err(|_| Error::BudgetExceeded(format!("exponent {m}")))?;
    let diff = UPoly::monomial(one.clone(), 2 * k).minus(&UPoly::monomial(one, k));
    Ok(diff.rem_monic(chi)?.is_zero())
}

/// Some `m > 0` with `A^m = A^{2m}`, derived from the orbit shape.
pub fn idempotent_power(a: &LaurentMatrix, budget: Budget) -> Result<u64> {
    match detect_orbit(a, budget)? {
        OrbitOutcome::Found { shape, .. } => {
            let m = shape.idempotent_exponent();
            let am = a.pow(m)?;
            assert_eq!(am.mul_unchecked(&am), am, "A^m = A^2m must hold");
            Ok(m)
        }
        OrbitOutcome::Indeterminate(e) => Err(Error::BudgetExceeded(e.to_string())),
    }
}

/// `max` over entries of `max(deg⁺_p, -deg⁻_p)`.
pub fn matrix_p_degree(a: &LaurentMatrix, p: u64) -> Result<i64> {
    a.entries()
        .try_fold(0, |acc, e| Ok(acc.max(e.p_degree(p)?)))
}

/// `(k, D_p(A^k))` for `k = 2^j`, `j ∈ from..=to`, computed by repeated squaring.
pub fn sampled_degrees(a: &LaurentMatrix, p: u64, from: u32, to: u32) -> Result<Vec<(u64, i64)>> {
    require_square(a)?;
    let mut power = a.clone();
    let mut out = Vec::new();
    for j in 0..=to {
        if j >= from {
            out.push((1u64 << j, matrix_p_degree(&power, p)?));
        }
        if j < to {
            power = power.mul_unchecked(&power);
        }
    }
    Ok(out)
}
