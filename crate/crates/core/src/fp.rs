//! Polynomials over a prime field `F_p`, and a primitive remainder sequence
//! for polynomials in `t` over `F_p[x]`.
//!
//! Both are used only after reducing modulo a prime divisor of `m`, where
//! division is available.

use crate::laurent::LaurentPoly;
use crate::modring::{mod_inverse, mul_mod};

/// A polynomial over `F_p`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: u64, k: usize, p: u64) -> Self {
        let mut coeffs = vec![0; k];
        coeffs.push(c);
        Self::new(p, coeffs)
    }

    /// `x^{-low} f mod p`; every exponent of `f` surviving mod `p` must be `≥ low`.
    pub fn from_laurent(f: &LaurentPoly, p: u64, low: i64) -> Self {
        let mut coeffs = Vec::new();
        for (e, c) in f.terms() {
            let c = c.value() % p;
            if c == 0 {
                continue;
            }
            let k = usize::try_from(e - low).expect("exponent below the shift");
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = c;
        }
        Self::new(p, coeffs)
    }

    /// `x^{-min} f mod p`, i.e. the Laurent polynomial shifted to start at `x^0`.
    pub fn from_laurent_shifted(f: &LaurentPoly, p: u64) -> Self {
        let terms: Vec<(i64, u64)> = f
            .terms()
            .map(|(e, c)| (e, c.value() % p))
            .filter(|&(_, c)| c != 0)
            .collect();
        let Some(&(low, _)) = terms.first() else {
            return Self::zero(p);
        };
        let high = terms.last().map_or(low, |t| t.0);
        let mut coeffs = vec![0; (high - low) as usize + 1];
        for (e, c) in terms {
            coeffs[(e - low) as usize] = c;
        }
        Self::new(p, coeffs)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..len)
                .map(|k| (self.coeff(k) + other.coeff(k)) % self.p)
                .collect(),
        )
    }

    pub fn minus(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..len)
                .map(|k| (self.coeff(k) + self.p - other.coeff(k)) % self.p)
                .collect(),
        )
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    pub fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let inv = mod_inverse(divisor.lead(), self.p).expect("p prime");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.pop().expect("nonempty");
            if top == 0 {
                continue;
            }
            let q = mul_mod(top, inv, self.p);
            let shift = rem.len() - d;
            quot[shift] = q;
            for (k, &c) in divisor.coeffs[..d].iter().enumerate() {
                rem[shift + k] = (rem[shift + k] + self.p - mul_mod(q, c, self.p)) % self.p;
            }
        }
        (Self::new(self.p, quot), Self::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(self.lead(), self.p).expect("p prime");
        self.scale(inv)
    }

    /// Descending rendering in the variable `var`, e.g. `t^2 + 2t + 1`.
    pub fn render(&self, var: char) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}{var}"),
                (k, 1) => format!("{var}^{k}"),
                (k, c) => format!("{c}{var}^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// A polynomial in `t` with coefficients in `F_p[x]`.
pub type BivPoly = Vec<FpPoly>;

fn biv_trim(a: &mut BivPoly) {
    while a.last().is_some_and(FpPoly::is_zero) {
        a.pop();
    }
}

/// Content: the monic gcd of the `F_p[x]` coefficients.
pub fn biv_content(a: &BivPoly, p: u64) -> FpPoly {
    a.iter().fold(FpPoly::zero(p), |g, c| g.gcd(c))
}

fn biv_primitive(mut a: BivPoly, p: u64) -> BivPoly {
    biv_trim(&mut a);
    let c = biv_content(&a, p);
    if c.degree().is_some_and(|d| d > 0) {
        for coeff in &mut a {
            *coeff = coeff.div_rem(&c).0;
        }
    }
    a
}

/// Pseudo-remainder of `a` by `b` in `F_p[x][t]`.
fn biv_prem(a: &BivPoly, b: &BivPoly) -> BivPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    biv_trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for coeff in r.iter_mut() {
            *coeff = coeff.times(lb);
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] = r[shift + k].minus(&lr.times(bc));
        }
        biv_trim(&mut r);
    }
    r
}

/// `t`-degree of `gcd(a, b)` in `F_p(x)[t]`, by the primitive PRS.
///
/// Returns `None` when both are zero.
pub fn biv_gcd_degree(a: &BivPoly, b: &BivPoly, p: u64) -> Option<usize> {
    let mut a = biv_primitive(a.clone(), p);
    let mut b = biv_primitive(b.clone(), p);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        return None;
    }
    while !b.is_empty() {
        let r = biv_primitive(biv_prem(&a, &b), p);
        a = b;
        b = r;
    }
    Some(a.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn gcd_examples() {
        // (x+1)(x+2) and (x+1)(x+3) over F_5
        let a = poly(5, &[1, 1]).times(&poly(5, &[2, 1]));
        let b = poly(5, &[1, 1]).times(&poly(5, &[3, 1]));
        assert_eq!(a.gcd(&b), poly(5, &[1, 1]));
        assert_eq!(poly(5, &[2]).gcd(&poly(5, &[0, 1])), poly(5, &[1]));
        assert_eq!(FpPoly::zero(3).gcd(&poly(3, &[0, 2])), poly(3, &[0, 1]));
        // x^2 + 1 = (x+1)^2 over F_2
        assert_eq!(poly(2, &[1, 0, 1]).gcd(&poly(2, &[1, 1])), poly(2, &[1, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = poly(7, &[3, 0, 5, 1, 6]);
        let b = poly(7, &[2, 4, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.times(&b).plus(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn laurent_shift() {
        let f = LaurentPoly::parse("3x^2 + x^-1", 6).unwrap();
        assert_eq!(FpPoly::from_laurent_shifted(&f, 3), poly(3, &[1]));
        assert_eq!(FpPoly::from_laurent_shifted(&f, 2), poly(2, &[1, 0, 0, 1]));
    }

    #[test]
    fn bivariate_gcd_degree() {
        let p = 3;
        // (t - x)(t + 1) and (t - x)(t + x)
        let t_minus_x = vec![poly(p, &[0, 2]), poly(p, &[1])];
        let mul = |a: &BivPoly, b: &BivPoly| {
            let mut out = vec![FpPoly::zero(p); a.len() + b.len() - 1];
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    out[i + j] = out[i + j].plus(&ai.times(bj));
                }
            }
            out
        };
        let a = mul(&t_minus_x, &vec![poly(p, &[1]), poly(p, &[1])]);
        let b = mul(&t_minus_x, &vec![poly(p, &[0, 1]), poly(p, &[1])]);
        assert_eq!(biv_gcd_degree(&a, &b, p), Some(1));
        let c = vec![poly(p, &[0, 1]), poly(p, &[1])];
        assert_eq!(biv_gcd_degree(&a, &c, p), Some(0));
    }
}
