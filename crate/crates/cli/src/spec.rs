//! The JSON rule document read by every command.

use std::path::Path;

use finpow::additive::AdditiveCaRule;
use finpow::lca::{FiniteConfiguration, LcaRule};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Linear,
    Additive,
}

/// One nonzero cell of the initial configuration, in input coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialCell {
    pub at: i64,
    pub value: Vec<i64>,
}

/// `matrices` are listed for `z = -radius, …, radius`. Linear rules give the
/// modulus `m`; additive rules give the cyclic factor orders in `group`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaSpec {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<u64>>,
    pub n: usize,
    pub radius: usize,
    pub matrices: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<InitialCell>>,
}

#[derive(Debug, Clone)]
pub enum Model {
    Linear(LcaRule),
    Additive(AdditiveCaRule),
}

impl Model {
    pub fn kind(&self) -> Kind {
        match self {
            Model::Linear(_) => Kind::Linear,
            Model::Additive(_) => Kind::Additive,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Model::Linear(rule) => rule.dim(),
            Model::Additive(rule) => rule.group().rank(),
        }
    }

    pub fn radius(&self) -> usize {
        match self {
            Model::Linear(rule) => rule.radius(),
            Model::Additive(rule) => rule.radius(),
        }
    }

    /// `(Z/m)^n` or the product of cyclic factors.
    pub fn alphabet(&self) -> String {
        match self {
            Model::Linear(rule) => format!("(Z/{})^{}", rule.m(), rule.dim()),
            Model::Additive(rule) => rule.group().to_string(),
        }
    }

    pub fn empty_config(&self) -> FiniteConfiguration {
        match self {
            Model::Linear(rule) => FiniteConfiguration::new(rule.m(), rule.dim()),
            Model::Additive(rule) => rule.empty_config(),
        }
    }

    pub fn step(&self, c: &FiniteConfiguration) -> finpow::Result<FiniteConfiguration> {
        match self {
            Model::Linear(rule) => rule.step(c),
            Model::Additive(rule) => rule.step(c),
        }
    }

    /// Order of each input coordinate.
    pub fn orders(&self) -> Vec<u64> {
        match self {
            Model::Linear(rule) => vec![rule.m(); rule.dim()],
            Model::Additive(rule) => {
                let g = rule.group();
                let mut orders = vec![0; g.rank()];
                for (i, &src) in g.permutation().iter().enumerate() {
                    orders[src] = g.factor_order(i);
                }
                orders
            }
        }
    }

    /// Input-coordinate vector to the internal cell representation.
    pub fn cell_from_input(&self, v: &[u64]) -> finpow::Result<Vec<u64>> {
        match self {
            Model::Linear(_) => Ok(v.to_vec()),
            Model::Additive(rule) => rule.group().normalize(v),
        }
    }

    pub fn cell_to_input(&self, v: &[u64]) -> finpow::Result<Vec<u64>> {
        match self {
            Model::Linear(_) => Ok(v.to_vec()),
            Model::Additive(rule) => rule.group().denormalize(v),
        }
    }
}

impl CaSpec {
    pub fn parse(text: &str, path: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let message = full
                .rsplit_once(" at line ")
                .map_or(full.as_str(), |(m, _)| m);
            CliError::Json {
                path: path.to_string(),
                line: e.line(),
                column: e.column(),
                message: message.to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: shown.clone(),
            source,
        })?;
        Self::parse(&text, &shown)
    }

    /// Structural checks, then construction of the rule.
    pub fn build(&self, path: &str) -> Result<Model, CliError> {
        let field = |field: &str, message: String| CliError::Field {
            path: path.to_string(),
            field: field.to_string(),
            message,
        };
        let expected = 2 * self.radius + 1;
        if self.matrices.len() != expected {
            return Err(field(
                "matrices",
                format!(
                    "radius {} needs {expected} matrices (z = -{}..{}), found {}",
                    self.radius,
                    self.radius,
                    self.radius,
                    self.matrices.len()
                ),
            ));
        }
        if self.n == 0 {
            return Err(field("n", "must be at least 1".into()));
        }
        let r = self.radius as i64;
        for (k, a) in self.matrices.iter().enumerate() {
            let z = k as i64 - r;
            let square = a.len() == self.n && a.iter().all(|row| row.len() == self.n);
            if !square {
                return Err(field(
                    &format!("matrices[{k}]"),
                    format!("matrix for z = {z} must be {0}x{0}", self.n),
                ));
            }
        }
        let rule_error = |e: finpow::Error| CliError::Rule {
            path: path.to_string(),
            source: e,
        };
        let model = match self.kind {
            Kind::Linear => {
                if self.group.is_some() {
                    return Err(field("group", "only allowed for additive rules".into()));
                }
                let m = self
                    .m
                    .ok_or_else(|| field("m", "required for linear rules".into()))?;
                Model::Linear(LcaRule::from_ints(m, &self.matrices).map_err(rule_error)?)
            }
            Kind::Additive => {
                if self.m.is_some() {
                    return Err(field("m", "only allowed for linear rules".into()));
                }
                let group = self
                    .group
                    .as_ref()
                    .ok_or_else(|| field("group", "required for additive rules".into()))?;
                if group.len() != self.n {
                    return Err(field(
                        "n",
                        format!("group has {} factors but n is {}", group.len(), self.n),
                    ));
                }
                Model::Additive(
                    AdditiveCaRule::from_input(group, &self.matrices).map_err(rule_error)?,
                )
            }
        };
        Ok(model)
    }

    /// The `initial` cells as a configuration of `model`, if present.
    pub fn initial_config(
        &self,
        model: &Model,
        path: &str,
    ) -> Result<Option<FiniteConfiguration>, CliError> {
        let Some(cells) = &self.initial else {
            return Ok(None);
        };
        let orders = model.orders();
        let mut c = model.empty_config();
        for (k, cell) in cells.iter().enumerate() {
            if cell.value.len() != orders.len() {
                return Err(CliError::Field {
                    path: path.to_string(),
                    field: format!("initial[{k}].value"),
                    message: format!(
                        "expected {} entries, found {}",
                        orders.len(),
                        cell.value.len()
                    ),
                });
            }
            let v: Vec<u64> = cell
                .value
                .iter()
                .zip(&orders)
                .map(|(&x, &q)| x.rem_euclid(q as i64) as u64)
                .collect();
            let internal = model.cell_from_input(&v).expect("length checked");
            c.set(cell.at, internal).expect("length checked");
        }
        Ok(Some(c))
    }
}
