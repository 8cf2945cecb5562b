use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{biv_gcd_degree, BivPoly, FpPoly};
use crate::laurent::LaurentPoly;
use crate::lca::{FiniteConfiguration, LcaRule};
use crate::polymat::{char_poly, determinant, CharPoly, UPoly};
use crate::power_semigroup::{non_integral_coefficient, NonIntegralCoefficient};

/// Largest field size `p^n` accepted by [`transitive_by_coprimality`].
pub const COPRIMALITY_MAX_FIELD: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityVerdict {
    pub sensitive: bool,
    pub equicontinuous: bool,
    pub reason: Option<NonIntegralCoefficient>,
}

fn rule_char_poly(rule: &LcaRule) -> CharPoly<LaurentPoly> {
    char_poly(&rule.associated_matrix()).expect("associated matrix is square")
}

fn rule_determinant(rule: &LcaRule) -> LaurentPoly {
    determinant(&rule.associated_matrix()).expect("associated matrix is square")
}

/// Sensitive iff the associated matrix has infinitely many powers.
pub fn decide_sensitivity(rule: &LcaRule) -> SensitivityVerdict {
    let reason = non_integral_coefficient(&rule_char_poly(rule));
    SensitivityVerdict {
        sensitive: reason.is_some(),
        equicontinuous: reason.is_none(),
        reason,
    }
}

/// A prime `p | m` with `det A ≡ 0 (mod p)`, if any.
pub fn surjectivity_failure(rule: &LcaRule) -> Option<u64> {
    let det = rule_determinant(rule);
    rule.modulus()
        .primes()
        .find(|&p| det.reduce(p).expect("p divides m").is_zero())
}

pub fn decide_surjective(rule: &LcaRule) -> bool {
    surjectivity_failure(rule).is_none()
}

/// A prime `p | m` modulo which `det A` is not a single monomial, if any.
pub fn injectivity_failure(rule: &LcaRule) -> Option<u64> {
    let det = rule_determinant(rule);
    rule.modulus()
        .primes()
        .find(|&p| det.reduce(p).expect("p divides m").len() != 1)
}

pub fn decide_injective(rule: &LcaRule) -> bool {
    injectivity_failure(rule).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TransitivityFailure {
    NotSurjective {
        prime: u64,
    },
    /// `χ_A mod p` vanishes at a nonzero element of `F̄_p`, i.e. at a root of
    /// unity; `factor` (ascending `F_p` coefficients in `t`) collects them.
    RootOfUnity {
        prime: u64,
        factor: Vec<u64>,
    },
}

/// `gcd_e χ_e(t)` in `F_p[t]`, where `χ mod p = Σ_e x^e χ_e(t)`.
fn slice_gcd(chi: &CharPoly<LaurentPoly>, p: u64) -> FpPoly {
    let mut slices: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    let n = chi.degree();
    for (k, a) in chi.coeffs().iter().enumerate() {
        for (e, c) in a.terms() {
            let c = c.value() % p;
            if c != 0 {
                slices.entry(e).or_insert_with(|| vec![0; n + 1])[k] = c;
            }
        }
    }
    slices
        .into_values()
        .fold(FpPoly::zero(p), |g, s| g.gcd(&FpPoly::new(p, s)))
}

/// Why the rule fails to be transitive, if it does.
///
/// `χ mod p` has a root `λ ∈ F̄_p^×` exactly when every `x`-slice `χ_e(t)`
/// vanishes at `λ`, since distinct powers of `x` are independent over `F_p(λ)`.
/// Every element of `F̄_p^×` is a root of unity, so transitivity at `p` is
/// `gcd_e χ_e = 1`; this also forces `det A ≢ 0 (mod p)`.
pub fn transitivity_failure(rule: &LcaRule) -> Option<TransitivityFailure> {
    if let Some(prime) = surjectivity_failure(rule) {
        return Some(TransitivityFailure::NotSurjective { prime });
    }
    let chi = rule_char_poly(rule);
    rule.modulus().primes().find_map(|p| {
        let g = slice_gcd(&chi, p);
        (g.degree() != Some(0)).then(|| TransitivityFailure::RootOfUnity {
            prime: p,
            factor: g.coeffs().to_vec(),
        })
    })
}

/// Transitive (equivalently ergodic, mixing, weakly mixing, totally transitive).
pub fn decide_transitive(rule: &LcaRule) -> bool {
    transitivity_failure(rule).is_none()
}

fn to_biv(poly: &UPoly<LaurentPoly>, p: u64) -> BivPoly {
    let low = poly
        .coeffs()
        .iter()
        .filter_map(LaurentPoly::min_exponent)
        .min()
        .unwrap_or(0);
    poly.coeffs()
        .iter()
        .map(|c| FpPoly::from_laurent(c, p, low))
        .collect()
}

fn t_pow_mod(exp: u64, chi: &UPoly<LaurentPoly>) -> UPoly<LaurentPoly> {
    let p = *chi.ctx();
    let mut acc = UPoly::monomial(LaurentPoly::one(p), 0)
        .rem_monic(chi)
        .expect("monic");
    let mut base = UPoly::monomial(LaurentPoly::one(p), 1)
        .rem_monic(chi)
        .expect("monic");
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.times(&base).rem_monic(chi).expect("monic");
        }
        e >>= 1;
        if e > 0 {
            base = base.times(&base).rem_monic(chi).expect("monic");
        }
    }
    acc
}

/// Transitivity by the coprimality criterion: surjective, and for every
/// prime `p | m` and `1 ≤ i ≤ n`, `gcd(χ mod p, t^{p^i - 1} - 1) = 1` in
/// `F_p(x)[t]`. The gcd is computed after clearing denominators, by a
/// primitive remainder sequence in `F_p[x][t]`.
///
/// Fails with `BudgetExceeded` when some `p^n` exceeds [`COPRIMALITY_MAX_FIELD`].
pub fn transitive_by_coprimality(rule: &LcaRule) -> Result<bool> {
    if !decide_surjective(rule) {
        return Ok(false);
    }
    let chi = rule_char_poly(rule);
    let n = rule.dim() as u32;
    for p in rule.modulus().primes() {
        let field = p.checked_pow(n).filter(|&q| q <= COPRIMALITY_MAX_FIELD);
        if field.is_none() {
            return Err(Error::BudgetExceeded(format!(
                "coprimality test over F_{p}^{n} exceeds field size {COPRIMALITY_MAX_FIELD}"
            )));
        }
        let chi_p = chi.to_poly().map(p, |a| a.reduce(p).expect("p divides m"));
        let chi_biv = to_biv(&chi_p, p);
        for i in 1..=n {
            let exp = p.pow(i) - 1;
            let one = UPoly::monomial(LaurentPoly::one(p), 0);
            let h = t_pow_mod(exp, &chi_p).minus(&one);
            if h.is_zero() {
                return Ok(false);
            }
            if biv_gcd_degree(&chi_biv, &to_biv(&h, p), p) != Some(0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First `k ≤ max_steps` with `F^k(e^{(i)})` nonzero at some `|j| > horizon`.
///
/// `None` means no excursion was seen; it is not a proof of non-spreading.
pub fn spreads(rule: &LcaRule, i: usize, horizon: i64, max_steps: u64) -> Result<Option<u64>> {
    let mut c = FiniteConfiguration::basis(rule.m(), rule.dim(), i, 0)?;
    for k in 1..=max_steps {
        c = rule.step(&c)?;
        match c.reach() {
            None => return Ok(None),
            Some(reach) if reach > horizon => return Ok(Some(k)),
            Some(_) => {}
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub sensitive: bool,
    pub equicontinuous: bool,
    pub injective: bool,
    pub surjective: bool,
    /// Also answers ergodicity, mixing, weak mixing and total transitivity.
    pub transitive: bool,
    pub reasons: BTreeMap<String, String>,
}

/// All properties of one rule, with a short reason per property.
pub fn decide_all(rule: &LcaRule) -> PropertyReport {
    let chi = rule_char_poly(rule);
    let det = rule_determinant(rule);
    let sens = decide_sensitivity(rule);
    let surj = surjectivity_failure(rule);
    let inj = injectivity_failure(rule);
    let trans = transitivity_failure(rule);
    let mut reasons = BTreeMap::new();
    reasons.insert(
        "sensitivity".to_string(),
        match &sens.reason {
            Some(r) => format!(
                "coefficient of t^{} in {} is not constant mod {} (term x^{})",
                r.index, chi, r.prime, r.exponent
            ),
            None => format!("every coefficient of {chi} is integral, so powers are finite"),
        },
    );
    reasons.insert(
        "surjectivity".to_string(),
        match surj {
            Some(p) => format!("determinant {det} vanishes mod {p}"),
            None => format!("determinant {det} is nonzero mod every prime divisor"),
        },
    );
    reasons.insert(
        "injectivity".to_string(),
        match inj {
            Some(p) => format!("determinant {det} is not a monomial mod {p}"),
            None => format!("determinant {det} is a monomial mod every prime divisor"),
        },
    );
    reasons.insert(
        "transitivity".to_string(),
        match &trans {
            Some(TransitivityFailure::NotSurjective { prime }) => {
                format!("not surjective (determinant vanishes mod {prime})")
            }
            Some(TransitivityFailure::RootOfUnity { prime, factor }) => format!(
                "characteristic polynomial mod {prime} has roots of unity as eigenvalues (common factor {})",
                FpPoly::new(*prime, factor.clone()).render('t')
            ),
            None => "no root of unity is an eigenvalue mod any prime divisor".to_string(),
        },
    );
    PropertyReport {
        sensitive: sens.sensitive,
        equicontinuous: sens.equicontinuous,
        injective: inj.is_none(),
        surjective: surj.is_none(),
        transitive: trans.is_none(),
        reasons,
    }
}
