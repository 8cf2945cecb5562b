use std::fmt;

use crate::error::{Error, Result};
use crate::polymat::RingMatrix;
use crate::ring::Ring;

/// A univariate polynomial in `t` with coefficients in `R`, stored densely in
/// ascending order without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly<R: Ring> {
    ctx: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> UPoly<R> {
    pub fn new(ctx: R::Ctx, coeffs: Vec<R>) -> Self {
        let mut p = Self { ctx, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero(ctx: R::Ctx) -> Self {
        Self {
            ctx,
            coeffs: Vec::new(),
        }
    }

    /// `c·t^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![R::zero(&ctx); k];
        coeffs.push(c);
        Self::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| R::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Ring::is_one)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.ctx.clone(),
            (0..len)
                .map(|k| self.coeff(k).plus(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn minus(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.ctx.clone(),
            (0..len)
                .map(|k| self.coeff(k).minus(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx.clone());
        }
        let mut out = vec![R::zero(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self::new(self.ctx.clone(), out)
    }

    /// Remainder of division by a monic polynomial; defined over any commutative ring.
    pub fn rem_monic(&self, divisor: &Self) -> Result<Self> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let lead = rem.pop().expect("nonempty");
            if lead.is_zero() {
                continue;
            }
            let shift = rem.len() - d;
            for (k, c) in divisor.coeffs[..d].iter().enumerate() {
                if !c.is_zero() {
                    rem[shift + k] = rem[shift + k].minus(&lead.times(c));
                }
            }
        }
        Ok(Self::new(self.ctx.clone(), rem))
    }

    /// Evaluates at a square matrix by Horner's scheme.
    pub fn eval_matrix(&self, a: &RingMatrix<R>) -> Result<RingMatrix<R>> {
        if !a.is_square() || *a.ctx() != self.ctx {
            return Err(Error::DimensionMismatch {
                expected: "square matrix over the coefficient ring".into(),
                found: format!("{}x{} over {:?}", a.rows(), a.cols(), a.ctx()),
            });
        }
        let n = a.rows();
        let mut acc = RingMatrix::zero(self.ctx.clone(), n, n);
        let id = RingMatrix::identity(self.ctx.clone(), n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(a).try_add(&id.scale(c)?)?;
        }
        Ok(acc)
    }

    pub fn map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::new(ctx, self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = c.to_string();
            let wrapped = if body.contains(' ') {
                format!("({body})")
            } else {
                body
            };
            match (k, c.is_one()) {
                (0, _) => write!(f, "{wrapped}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{wrapped}*t")?,
                (k, true) => write!(f, "t^{k}")?,
                (k, false) => write!(f, "{wrapped}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The characteristic polynomial `det(tI_n - A)`: monic of degree exactly `n`,
/// coefficient of `t^k` at index `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> CharPoly<R> {
    pub fn new(coeffs: Vec<R>) -> Result<Self> {
        if !coeffs.last().is_some_and(Ring::is_one) {
            return Err(Error::NotMonic);
        }
        Ok(Self { coeffs })
    }

    /// Degree `n` (the matrix dimension).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn ctx(&self) -> R::Ctx {
        self.coeffs[0].ctx()
    }

    pub fn to_poly(&self) -> UPoly<R> {
        UPoly::new(self.ctx(), self.coeffs.clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Result<CharPoly<S>> {
        CharPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for CharPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
