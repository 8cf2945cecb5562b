use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// A dense row-major matrix over a commutative ring.
///
/// All entries share the ring context `ctx`; a `0×0` matrix still knows its
/// ring, which keeps empty determinants (`= 1`) well defined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix<R: Ring> {
    ctx: R::Ctx,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn new(ctx: R::Ctx, rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries for {rows}x{cols}", rows * cols),
                found: data.len().to_string(),
            });
        }
        if let Some(bad) = data.iter().find(|e| e.ctx() != ctx) {
            return Err(Error::DimensionMismatch {
                expected: format!("entries over {ctx:?}"),
                found: format!("entry over {:?}", bad.ctx()),
            });
        }
        Ok(Self {
            ctx,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(ctx: R::Ctx, rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: format!("rows of length {c}"),
                found: format!("row of length {}", bad.len()),
            });
        }
        Self::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(ctx: R::Ctx, rows: usize, cols: usize) -> Self {
        let z = R::zero(&ctx);
        Self {
            data: vec![z; rows * cols],
            ctx,
            rows,
            cols,
        }
    }

    pub fn identity(ctx: R::Ctx, n: usize) -> Self {
        let mut out = Self::zero(ctx, n, n);
        let one = R::one(&out.ctx);
        for i in 0..n {
            out.data[i * n + i] = one.clone();
        }
        out
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        debug_assert_eq!(value.ctx(), self.ctx);
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    /// Total number of base-ring coefficients stored in the entries.
    pub fn weight(&self) -> usize {
        self.data.iter().map(Ring::weight).sum()
    }

    pub fn map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> Result<RingMatrix<S>> {
        RingMatrix::new(ctx, self.rows, self.cols, self.data.iter().map(f).collect())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::DimensionMismatch {
                expected: format!("matrix over {:?}", self.ctx),
                found: format!("matrix over {:?}", other.ctx),
            });
        }
        Ok(())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        self.check_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, R::plus))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, R::minus))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        Self {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows on the right factor", self.cols),
                found: other.rows.to_string(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = R::zero(&self.ctx);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                data.push(acc);
            }
        }
        Self {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn scale(&self, c: &R) -> Result<Self> {
        if c.ctx() != self.ctx {
            return Err(Error::DimensionMismatch {
                expected: format!("scalar over {:?}", self.ctx),
                found: format!("scalar over {:?}", c.ctx()),
            });
        }
        Ok(Self {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.times(c)).collect(),
        })
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", self.rows, self.cols),
            })
        }
    }

    /// `A^k` by repeated squaring; `A^0 = I`.
    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Self::identity(self.ctx.clone(), n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<R> {
        let n = self.require_square()?;
        Ok((0..n).fold(R::zero(&self.ctx), |acc, i| acc.plus(self.get(i, i))))
    }

    /// `sub_U^V A`: keeps the rows indexed by `rows` and the columns indexed by
    /// `cols` (0-based, taken in increasing order).
    pub fn principal_submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut rs = rows.to_vec();
        let mut cs = cols.to_vec();
        rs.sort_unstable();
        rs.dedup();
        cs.sort_unstable();
        cs.dedup();
        if let Some(&bad) = rs.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.rows,
            });
        }
        if let Some(&bad) = cs.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.cols,
            });
        }
        let data = rs
            .iter()
            .flat_map(|&i| cs.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Ok(Self {
            ctx: self.ctx.clone(),
            rows: rs.len(),
            cols: cs.len(),
            data,
        })
    }
}

impl<R: Ring + fmt::Display> fmt::Display for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
