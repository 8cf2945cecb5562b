//! Machine-readable reports. Field names and shapes are a compatibility
//! surface; see `SCHEMA.md`.

use finpow::lca::PropertyReport;
use finpow::power_semigroup::Budget;
use serde::{Deserialize, Serialize};

use crate::spec::Kind;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSummary {
    pub kind: Kind,
    pub alphabet: String,
    pub n: usize,
    pub radius: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub prime: u64,
    pub group: String,
    pub properties: PropertyReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub rule: RuleSummary,
    pub properties: PropertyReport,
    /// Per-prime results for additive rules; empty for linear rules.
    pub components: Vec<ComponentReport>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub prime: u64,
    pub value: String,
    pub constant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub index: usize,
    pub value: String,
    pub integral: bool,
    pub reductions: Vec<Reduction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharpolyReport {
    pub rule: RuleSummary,
    pub chi: String,
    /// `a_0, …, a_n` of `χ = Σ a_k t^k`.
    pub coefficients: Vec<CoefficientReport>,
    pub finite: bool,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitStatus {
    Found,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGrowth {
    pub prime: u64,
    /// `(k, D_p(A^k))` pairs.
    pub samples: Vec<(u64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub rule: RuleSummary,
    pub status: OrbitStatus,
    /// The exact verdict from the characteristic polynomial.
    pub finite: bool,
    pub preperiod: Option<u64>,
    pub period: Option<u64>,
    pub size: Option<u64>,
    pub multiplications: Option<u64>,
    pub budget: Budget,
    pub exhaustion: Option<String>,
    pub degree_growth: Option<DegreeGrowth>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialSource {
    Spec,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub rule: RuleSummary,
    pub steps: u64,
    pub window: i64,
    pub initial: InitialSource,
    /// `rows[t][i + window]` is cell `i` at time `t`, in input coordinates.
    pub rows: Vec<Vec<Vec<u64>>>,
    pub seed: Option<u64>,
}
