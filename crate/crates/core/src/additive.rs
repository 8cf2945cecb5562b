//! Additive cellular automata over finite abelian groups.
//!
//! A group `G ≅ ⊕ Z/p_i^{k_i}` is handled through coordinates relative to its
//! cyclic factors. Per prime, the factors are ordered `k_1 ≥ k_2 ≥ …`; the
//! embedding `ξ(h)^i = h^i p^{k_1 - k_i}` carries the CA over a `p`-group to a
//! linear CA over `(Z/p^{k_1})^n` with the same dynamical properties.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lca::{decide_all, FiniteConfiguration, LcaRule, PropertyReport};
use crate::modring::{Modulus, PrimePower};

/// A finite abelian group given by its cyclic prime-power factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    /// Sorted by prime, then by exponent descending.
    factors: Vec<PrimePower>,
    /// `permutation[i]` is the input position of normalized factor `i`.
    permutation: Vec<usize>,
}

impl AbelianGroup {
    /// Accepts the orders of the cyclic factors in any order.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup(
                "at least one factor is required".into(),
            ));
        }
        let mut tagged = Vec::with_capacity(orders.len());
        for (idx, &q) in orders.iter().enumerate() {
            let factors = Modulus::new(q)
                .map_err(|_| Error::InvalidGroup(format!("factor {q} is not a prime power ≥ 2")))?
                .factors()
                .to_vec();
            if factors.len() != 1 {
                return Err(Error::InvalidGroup(format!(
                    "factor {q} is not a prime power"
                )));
            }
            tagged.push((factors[0], idx));
        }
        tagged.sort_by(|(a, i), (b, j)| {
            (a.prime, std::cmp::Reverse(a.exponent), i).cmp(&(
                b.prime,
                std::cmp::Reverse(b.exponent),
                j,
            ))
        });
        Ok(Self {
            factors: tagged.iter().map(|t| t.0).collect(),
            permutation: tagged.iter().map(|t| t.1).collect(),
        })
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Order of factor `i` (normalized indexing).
    pub fn factor_order(&self, i: usize) -> u64 {
        self.factors[i].value()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|f| f.value() as u128).product()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        let mut best: BTreeMap<u64, u64> = BTreeMap::new();
        for f in &self.factors {
            let v = best.entry(f.prime).or_insert(1);
            *v = (*v).max(f.value());
        }
        best.values().product()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|f| f.prime).collect();
        ps.dedup();
        ps
    }

    pub fn is_p_group(&self) -> bool {
        self.primes().len() == 1
    }

    /// Reorders a coordinate vector given in input order into normalized order.
    pub fn normalize(&self, input: &[u64]) -> Result<Vec<u64>> {
        self.check_len(input.len())?;
        Ok(self
            .permutation
            .iter()
            .enumerate()
            .map(|(i, &src)| input[src] % self.factor_order(i))
            .collect())
    }

    /// Inverse of [`AbelianGroup::normalize`].
    pub fn denormalize(&self, coords: &[u64]) -> Result<Vec<u64>> {
        self.check_len(coords.len())?;
        let mut out = vec![0; coords.len()];
        for (i, &src) in self.permutation.iter().enumerate() {
            out[src] = coords[i];
        }
        Ok(out)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} coordinates", self.rank()),
                found: len.to_string(),
            });
        }
        Ok(())
    }

    fn block(&self, prime: u64) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.factors[i].prime == prime)
            .collect()
    }

    fn sub_group(&self, idx: &[usize]) -> Self {
        Self {
            factors: idx.iter().map(|&i| self.factors[i]).collect(),
            permutation: (0..idx.len()).collect(),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|q| format!("Z/{}", q.value()))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// An endomorphism of `G` in normalized coordinates: column `j` is the image
/// of the generator `e_j`, with entry `i` reduced mod the order of factor `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupEndomorphism {
    matrix: Vec<Vec<u64>>,
}

impl GroupEndomorphism {
    /// Validates a matrix given in normalized coordinates.
    ///
    /// `offset` is only used to label errors.
    pub fn from_normalized(group: &AbelianGroup, rows: &[Vec<i64>], offset: i64) -> Result<Self> {
        let n = group.rank();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: format!("{n}x{n} endomorphism matrix"),
                found: format!("{} rows", rows.len()),
            });
        }
        let mut matrix = vec![vec![0u64; n]; n];
        for i in 0..n {
            let fi = group.factors[i];
            let qi = fi.value();
            for j in 0..n {
                let fj = group.factors[j];
                let v = rows[i][j].rem_euclid(qi as i64) as u64;
                let divisor = if fi.prime != fj.prime {
                    qi
                } else if fi.exponent > fj.exponent {
                    fi.prime.pow(fi.exponent - fj.exponent)
                } else {
                    1
                };
                if !v.is_multiple_of(divisor) {
                    return Err(Error::MalformedEndomorphism {
                        offset,
                        row: i,
                        col: j,
                        value: v,
                        divisor,
                    });
                }
                matrix[i][j] = v;
            }
        }
        Ok(Self { matrix })
    }

    /// Validates a matrix given in the group's input coordinate order.
    pub fn new(group: &AbelianGroup, rows: &[Vec<i64>], offset: i64) -> Result<Self> {
        let n = group.rank();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: format!("{n}x{n} endomorphism matrix"),
                found: format!("{} rows", rows.len()),
            });
        }
        let perm = group.permutation();
        let normalized: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| rows[perm[i]][perm[j]]).collect())
            .collect();
        Self::from_normalized(group, &normalized, offset).map_err(|e| match e {
            Error::MalformedEndomorphism {
                offset,
                row,
                col,
                value,
                divisor,
            } => Error::MalformedEndomorphism {
                offset,
                row: perm[row],
                col: perm[col],
                value,
                divisor,
            },
            other => other,
        })
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&v| v == 0)
    }

    /// `δ(h)` for normalized coordinates `h`.
    pub fn apply(&self, group: &AbelianGroup, h: &[u64]) -> Vec<u64> {
        (0..group.rank())
            .map(|i| {
                let q = group.factor_order(i) as u128;
                let s = self.matrix[i]
                    .iter()
                    .zip(h)
                    .fold(0u128, |acc, (&e, &x)| (acc + e as u128 * x as u128) % q);
                s as u64
            })
            .collect()
    }

    fn restrict(&self, idx: &[usize]) -> Self {
        Self {
            matrix: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.matrix[i][j]).collect())
                .collect(),
        }
    }
}

/// `F(c)_i = Σ_z δ_z(c_{i+z})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveCaRule {
    group: AbelianGroup,
    radius: usize,
    /// `endos[z + r]` is `δ_z`.
    endos: Vec<GroupEndomorphism>,
}

impl AdditiveCaRule {
    pub fn new(group: AbelianGroup, endos: Vec<GroupEndomorphism>) -> Result<Self> {
        if endos.len().is_multiple_of(2) {
            return Err(Error::InvalidRule(format!(
                "expected 2r+1 endomorphisms, got {}",
                endos.len()
            )));
        }
        let n = group.rank();
        if endos.iter().any(|e| e.matrix.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: format!("endomorphisms of rank {n}"),
                found: "other rank".into(),
            });
        }
        Ok(Self {
            radius: endos.len() / 2,
            group,
            endos,
        })
    }

    /// Builds a rule from factor orders and integer matrices `δ_{-r}, …, δ_r`
    /// in input coordinates.
    pub fn from_input(orders: &[u64], mats: &[Vec<Vec<i64>>]) -> Result<Self> {
        let group = AbelianGroup::new(orders)?;
        let r = (mats.len() / 2) as i64;
        let endos = mats
            .iter()
            .enumerate()
            .map(|(k, a)| GroupEndomorphism::new(&group, a, k as i64 - r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, endos)
    }

    pub fn identity(orders: &[u64]) -> Result<Self> {
        let group = AbelianGroup::new(orders)?;
        let n = group.rank();
        let id: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let endo = GroupEndomorphism::from_normalized(&group, &id, 0)?;
        Self::new(group, vec![endo])
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `δ_z` for `-r ≤ z ≤ r`.
    pub fn endo(&self, z: i64) -> &GroupEndomorphism {
        &self.endos[(z + self.radius as i64) as usize]
    }

    pub fn endos(&self) -> &[GroupEndomorphism] {
        &self.endos
    }

    /// An empty configuration over `G` (normalized coordinates).
    pub fn empty_config(&self) -> FiniteConfiguration {
        FiniteConfiguration::new(self.group.exponent(), self.group.rank())
    }

    /// Direct simulation in `G` coordinates.
    pub fn step(&self, c: &FiniteConfiguration) -> Result<FiniteConfiguration> {
        if c.dim() != self.group.rank() || c.modulus() != self.group.exponent() {
            return Err(Error::DimensionMismatch {
                expected: format!("configuration over {}", self.group),
                found: format!("configuration over (Z/{})^{}", c.modulus(), c.dim()),
            });
        }
        let mut out = self.empty_config();
        let (Some(lo), Some(hi)) = (c.min_position(), c.max_position()) else {
            return Ok(out);
        };
        let r = self.radius as i64;
        let n = self.group.rank();
        for i in lo - r..=hi + r {
            let mut acc = vec![0u64; n];
            for z in -r..=r {
                let Some(h) = c.get(i + z) else { continue };
                let img = self.endo(z).apply(&self.group, h);
                for (k, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + img[k]) % self.group.factor_order(k);
                }
            }
            out.set(i, acc)?;
        }
        Ok(out)
    }
}

/// `F(c)` for an additive rule; see [`AdditiveCaRule::step`].
pub fn step_additive(
    rule: &AdditiveCaRule,
    c: &FiniteConfiguration,
) -> Result<FiniteConfiguration> {
    rule.step(c)
}

/// One rule per prime, each acting on that prime's block of factors.
pub fn prime_components(rule: &AdditiveCaRule) -> Vec<(u64, AdditiveCaRule)> {
    rule.group
        .primes()
        .into_iter()
        .map(|p| {
            let idx = rule.group.block(p);
            let component = AdditiveCaRule {
                group: rule.group.sub_group(&idx),
                radius: rule.radius,
                endos: rule.endos.iter().map(|e| e.restrict(&idx)).collect(),
            };
            (p, component)
        })
        .collect()
}

/// The coordinates of `c` belonging to `prime`'s factors, as a configuration
/// over that component.
pub fn project_config(
    group: &AbelianGroup,
    prime: u64,
    c: &FiniteConfiguration,
) -> Result<FiniteConfiguration> {
    let idx = group.block(prime);
    let sub = group.sub_group(&idx);
    let mut out = FiniteConfiguration::new(sub.exponent(), sub.rank());
    for (pos, v) in c.cells() {
        out.set(pos, idx.iter().map(|&i| v[i]).collect())?;
    }
    Ok(out)
}

fn require_p_group(group: &AbelianGroup) -> Result<PrimePower> {
    if !group.is_p_group() {
        return Err(Error::MultiplePrimes);
    }
    Ok(group.factors[0])
}

/// `ξ(h)^i = h^i p^{k_1 - k_i}` in `(Z/p^{k_1})^n`.
pub fn embed(group: &AbelianGroup, h: &[u64]) -> Result<Vec<u64>> {
    let top = require_p_group(group)?;
    group.check_len(h.len())?;
    Ok(group
        .factors
        .iter()
        .zip(h)
        .map(|(f, &x)| {
            let scale = top.prime.pow(top.exponent - f.exponent) as u128;
            ((x as u128 % f.value() as u128) * scale % top.value() as u128) as u64
        })
        .collect())
}

/// `Ξ(c)_j = ξ(c_j)`.
pub fn embed_config(group: &AbelianGroup, c: &FiniteConfiguration) -> Result<FiniteConfiguration> {
    let top = require_p_group(group)?;
    let mut out = FiniteConfiguration::new(top.value(), group.rank());
    for (pos, v) in c.cells() {
        out.set(pos, embed(group, v)?)?;
    }
    Ok(out)
}

/// The linear CA `L` over `(Z/p^{k_1})^n` with `L ∘ Ξ = Ξ ∘ F`:
/// `a^{(z)}_{ij} = p^{k_j - k_i} δ_z(e_j)^i`, where a negative power of `p`
/// means exact division (possible by well-formedness).
pub fn associated_lca(rule: &AdditiveCaRule) -> Result<LcaRule> {
    let top = require_p_group(&rule.group)?;
    let p = top.prime;
    let q = top.value() as u128;
    let f = &rule.group.factors;
    let n = rule.group.rank();
    let mats: Vec<Vec<Vec<i64>>> = rule
        .endos
        .iter()
        .map(|e| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let v = e.matrix[i][j] as u128;
                            let (ki, kj) = (f[i].exponent, f[j].exponent);
                            let a = if kj >= ki {
                                v * p.pow(kj - ki) as u128
                            } else {
                                v / p.pow(ki - kj) as u128
                            };
                            (a % q) as i64
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    LcaRule::from_ints(top.value(), &mats)
}

/// One entry per prime component: the associated LCA and its report.
pub fn component_reports(
    rule: &AdditiveCaRule,
) -> Result<Vec<(AbelianGroup, LcaRule, PropertyReport)>> {
    prime_components(rule)
        .into_iter()
        .map(|(_, comp)| {
            let lca = associated_lca(&comp)?;
            let report = decide_all(&lca);
            Ok((comp.group, lca, report))
        })
        .collect()
}

/// Properties of `F`: sensitive if some component is, the other properties
/// if every component has them.
pub fn decide_properties(rule: &AdditiveCaRule) -> Result<PropertyReport> {
    let comps = component_reports(rule)?;
    let sensitive = comps.iter().any(|c| c.2.sensitive);
    let mut reasons = BTreeMap::new();
    for (group, _, report) in &comps {
        for (key, why) in &report.reasons {
            let entry = reasons.entry(key.clone()).or_insert_with(String::new);
            if !entry.is_empty() {
                entry.push_str("; ");
            }
            entry.push_str(&format!("[{group}] {why}"));
        }
    }
    Ok(PropertyReport {
        sensitive,
        equicontinuous: !sensitive,
        injective: comps.iter().all(|c| c.2.injective),
        surjective: comps.iter().all(|c| c.2.surjective),
        transitive: comps.iter().all(|c| c.2.transitive),
        reasons,
    })
}
