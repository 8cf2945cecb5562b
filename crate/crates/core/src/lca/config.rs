use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A finitely supported configuration over `(Z/mZ)^n`; zero cells are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteConfiguration {
    m: u64,
    n: usize,
    cells: BTreeMap<i64, Vec<u64>>,
}

impl FiniteConfiguration {
    pub fn new(m: u64, n: usize) -> Self {
        Self {
            m,
            n,
            cells: BTreeMap::new(),
        }
    }

    /// `e^{(i)}` placed at `position`: the `i`-th unit vector (0-based) in one cell.
    pub fn basis(m: u64, n: usize, i: usize, position: i64) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        let mut c = Self::new(m, n);
        let mut v = vec![0; n];
        v[i] = 1;
        c.set(position, v)?;
        Ok(c)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Sets a cell, reducing entries mod `m`; a zero vector clears it.
    pub fn set(&mut self, position: i64, value: Vec<u64>) -> Result<()> {
        if value.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.n),
                found: value.len().to_string(),
            });
        }
        let v: Vec<u64> = value.into_iter().map(|x| x % self.m).collect();
        if v.iter().all(|&x| x == 0) {
            self.cells.remove(&position);
        } else {
            self.cells.insert(position, v);
        }
        Ok(())
    }

    pub fn get(&self, position: i64) -> Option<&[u64]> {
        self.cells.get(&position).map(Vec::as_slice)
    }

    /// The cell value, with zero for positions outside the support.
    pub fn value(&self, position: i64) -> Vec<u64> {
        self.get(position)
            .map_or_else(|| vec![0; self.n], <[u64]>::to_vec)
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, &[u64])> {
        self.cells.iter().map(|(&i, v)| (i, v.as_slice()))
    }

    pub fn support(&self) -> Vec<i64> {
        self.cells.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn min_position(&self) -> Option<i64> {
        self.cells.keys().next().copied()
    }

    pub fn max_position(&self) -> Option<i64> {
        self.cells.keys().next_back().copied()
    }

    /// Largest `|i|` over the support.
    pub fn reach(&self) -> Option<i64> {
        Some(self.min_position()?.abs().max(self.max_position()?.abs()))
    }

    /// Component power series `𝒫_c^k = Σ_i c_i^k X^i`.
    pub fn power_series(&self) -> Vec<LaurentPoly> {
        (0..self.n)
            .map(|k| {
                LaurentPoly::from_terms(self.m, self.cells.iter().map(|(&i, v)| (i, v[k] as i64)))
            })
            .collect()
    }
}
