//! Linear cellular automata over `(Z/mZ)^n`.
//!
//! A rule of radius `r` is given by matrices `A_{-r}, …, A_r` and acts by
//! `F(c)_i = Σ_z A_z c_{i+z}`. Its associated matrix `A(X) = Σ_z A_z X^{-z}`
//! satisfies `𝒫_{F(c)} = A · 𝒫_c` on power series `𝒫_c = Σ_i c_i X^i`.

mod config;
mod decide;
mod render;

pub use config::FiniteConfiguration;
pub use decide::{
    decide_all, decide_injective, decide_sensitivity, decide_surjective, decide_transitive,
    injectivity_failure, spreads, surjectivity_failure, transitive_by_coprimality,
    transitivity_failure, PropertyReport, SensitivityVerdict, TransitivityFailure,
    COPRIMALITY_MAX_FIELD,
};
pub use render::{render_cell, space_time};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::modring::{Modulus, Residue};
use crate::polymat::RingMatrix;
use crate::power_semigroup::LaurentMatrix;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcaRule {
    modulus: Modulus,
    n: usize,
    radius: usize,
    /// `matrices[z + r]` is `A_z`.
    matrices: Vec<RingMatrix<Residue>>,
}

impl LcaRule {
    /// `matrices` lists `A_{-r}, …, A_r`; there must be an odd number of them.
    pub fn new(m: u64, n: usize, matrices: Vec<RingMatrix<Residue>>) -> Result<Self> {
        let modulus = Modulus::new(m)?;
        if n == 0 {
            return Err(Error::InvalidRule("dimension must be at least 1".into()));
        }
        if matrices.len().is_multiple_of(2) {
            return Err(Error::InvalidRule(format!(
                "expected 2r+1 matrices, got {}",
                matrices.len()
            )));
        }
        for (idx, a) in matrices.iter().enumerate() {
            if (a.rows(), a.cols()) != (n, n) || *a.ctx() != m {
                return Err(Error::DimensionMismatch {
                    expected: format!("{n}x{n} matrix over Z/{m}"),
                    found: format!(
                        "matrix #{idx}: {}x{} over Z/{}",
                        a.rows(),
                        a.cols(),
                        a.ctx()
                    ),
                });
            }
        }
        Ok(Self {
            modulus,
            n,
            radius: matrices.len() / 2,
            matrices,
        })
    }

    /// Builds the rule from integer entries, `mats[z + r][row][col]`.
    pub fn from_ints(m: u64, mats: &[Vec<Vec<i64>>]) -> Result<Self> {
        let n = mats.first().map_or(0, Vec::len);
        let matrices = mats
            .iter()
            .map(|a| {
                RingMatrix::from_rows(
                    m,
                    a.iter()
                        .map(|row| row.iter().map(|&v| Residue::new(v, m)).collect())
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, n, matrices)
    }

    /// `F = id`.
    pub fn identity(m: u64, n: usize) -> Result<Self> {
        Self::new(m, n, vec![RingMatrix::identity(m, n)])
    }

    /// `F(c)_i = c_{i+1}`, i.e. `A_1 = I` at radius 1.
    pub fn shift(m: u64, n: usize) -> Result<Self> {
        Self::new(
            m,
            n,
            vec![
                RingMatrix::zero(m, n, n),
                RingMatrix::zero(m, n, n),
                RingMatrix::identity(m, n),
            ],
        )
    }

    pub fn zero(m: u64, n: usize, radius: usize) -> Result<Self> {
        Self::new(m, n, vec![RingMatrix::zero(m, n, n); 2 * radius + 1])
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn m(&self) -> u64 {
        self.modulus.value()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `A_z` for `-r ≤ z ≤ r`.
    pub fn matrix(&self, z: i64) -> &RingMatrix<Residue> {
        &self.matrices[(z + self.radius as i64) as usize]
    }

    pub fn matrices(&self) -> &[RingMatrix<Residue>] {
        &self.matrices
    }

    fn offsets(&self) -> impl Iterator<Item = i64> {
        let r = self.radius as i64;
        -r..=r
    }

    /// `A(X) = Σ_z A_z X^{-z}`.
    pub fn associated_matrix(&self) -> LaurentMatrix {
        let m = self.m();
        let mut out: LaurentMatrix = RingMatrix::zero(m, self.n, self.n);
        for z in self.offsets() {
            let a = self.matrix(z);
            for i in 0..self.n {
                for j in 0..self.n {
                    let c = a.get(i, j);
                    if !c.is_zero() {
                        let term = LaurentPoly::monomial(c.value() as i64, -z, m);
                        out.set(i, j, out.get(i, j).plus(&term));
                    }
                }
            }
        }
        out
    }

    /// One application of the global map.
    pub fn step(&self, c: &FiniteConfiguration) -> Result<FiniteConfiguration> {
        self.check_config(c)?;
        let m = self.m();
        let mut out = FiniteConfiguration::new(m, self.n);
        let r = self.radius as i64;
        let (Some(lo), Some(hi)) = (c.min_position(), c.max_position()) else {
            return Ok(out);
        };
        for i in lo - r..=hi + r {
            let mut acc = vec![0u64; self.n];
            for z in self.offsets() {
                let Some(v) = c.get(i + z) else { continue };
                let a = self.matrix(z);
                for (row, slot) in acc.iter_mut().enumerate() {
                    for (col, &x) in v.iter().enumerate() {
                        let e = a.get(row, col).value();
                        if e != 0 && x != 0 {
                            *slot = ((*slot as u128 + e as u128 * x as u128) % m as u128) as u64;
                        }
                    }
                }
            }
            out.set(i, acc)?;
        }
        Ok(out)
    }

    /// `F^k(c)`.
    pub fn iterate(&self, c: &FiniteConfiguration, k: u64) -> Result<FiniteConfiguration> {
        let mut cur = c.clone();
        for _ in 0..k {
            cur = self.step(&cur)?;
        }
        Ok(cur)
    }

    fn check_config(&self, c: &FiniteConfiguration) -> Result<()> {
        if c.modulus() != self.m() || c.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: format!("configuration over (Z/{})^{}", self.m(), self.n),
                found: format!("configuration over (Z/{})^{}", c.modulus(), c.dim()),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule90() -> LcaRule {
        LcaRule::from_ints(2, &[vec![vec![1]], vec![vec![0]], vec![vec![1]]]).unwrap()
    }

    #[test]
    fn associated_matrix_examples() {
        let a = rule90().associated_matrix();
        assert_eq!(a.get(0, 0).to_string(), "x + x^-1");
        let id = LcaRule::identity(5, 2).unwrap().associated_matrix();
        assert_eq!(id, RingMatrix::identity(5, 2));
        let sh = LcaRule::shift(3, 2).unwrap().associated_matrix();
        let xinv = LaurentPoly::monomial(1, -1, 3);
        assert_eq!(sh, RingMatrix::identity(3, 2).scale(&xinv).unwrap());
    }

    #[test]
    fn step_examples() {
        let mut c = FiniteConfiguration::new(2, 1);
        c.set(0, vec![1]).unwrap();
        let next = rule90().step(&c).unwrap();
        assert_eq!(next.support(), vec![-1, 1]);
        assert_eq!(LcaRule::identity(2, 1).unwrap().step(&c).unwrap(), c);
        assert!(LcaRule::zero(2, 1, 1).unwrap().step(&c).unwrap().is_zero());
        let shifted = LcaRule::shift(2, 1).unwrap().step(&c).unwrap();
        assert_eq!(shifted.support(), vec![-1]);
    }

    #[test]
    fn step_matches_power_series() {
        let rule = LcaRule::from_ints(
            6,
            &[
                vec![vec![1, 2], vec![0, 5]],
                vec![vec![3, 0], vec![4, 1]],
                vec![vec![0, 1], vec![2, 2]],
            ],
        )
        .unwrap();
        let mut c = FiniteConfiguration::new(6, 2);
        c.set(-2, vec![1, 3]).unwrap();
        c.set(1, vec![5, 0]).unwrap();
        c.set(4, vec![2, 2]).unwrap();
        let lhs = rule.step(&c).unwrap().power_series();
        let a = rule.associated_matrix();
        let ps = c.power_series();
        let rhs: Vec<LaurentPoly> = (0..2)
            .map(|i| {
                (0..2).fold(LaurentPoly::zero(6), |acc, j| {
                    acc.plus(&a.get(i, j).times(&ps[j]))
                })
            })
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_malformed_rules() {
        assert!(LcaRule::from_ints(4, &[vec![vec![1]], vec![vec![1]]]).is_err());
        assert!(LcaRule::from_ints(1, &[vec![vec![1]]]).is_err());
        assert!(LcaRule::from_ints(4, &[vec![vec![1]], vec![vec![1, 0]], vec![vec![1]]]).is_err());
    }
}
