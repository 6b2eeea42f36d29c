use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::TypeParams;
use crate::policies::{Policy, PolicyConfig, DEFAULT_DELTA};
use crate::stats::{ConfidenceConstant, KlBonus};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    /// The JSON does not match the schema; `field` is the path to the
    /// offending value, e.g. `policies[2]`.
    #[error("invalid config field `{field}`: {message}")]
    Parse { field: String, message: String },
    #[error("invalid config field `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
}

/// How per-seed competitive ratios are combined in the summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregation {
    #[default]
    MeanOfRatios,
    RatioOfMeans,
}

named_variants!(Aggregation {
    MeanOfRatios => "mean-of-ratios",
    RatioOfMeans => "ratio-of-means"
});

/// A single value or a list of values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> Grid<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            Grid::One(v) => vec![v.clone()],
            Grid::Many(vs) => vs.clone(),
        }
    }
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

/// One experiment: every policy on every `(lambdas, n)` grid point and
/// every seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub policies: Vec<Policy>,
    /// A single mean vector or a list of them.
    pub lambdas: Grid<Vec<f64>>,
    pub n: Grid<usize>,
    /// Number of types; when given, every mean vector must have this length.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Number of seeds per grid point.
    pub seeds: u64,
    /// Seeds run from `base_seed` to `base_seed + seeds - 1`.
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub bonus: KlBonus,
    #[serde(default)]
    pub confidence_constant: ConfidenceConstant,
    #[serde(default)]
    pub aggregation: Aggregation,
}

/// One validated `(lambdas, n)` pair of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub params: TypeParams,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: Self = serde_path_to_error::deserialize(de).map_err(|err| {
            let path = err.path().to_string();
            let message = err.inner().to_string();
            // A missing or unknown field is reported at the parent path.
            let field = match path.as_str() {
                "." | "?" => top_level_field(&message).unwrap_or_else(|| "<document>".into()),
                _ => path,
            };
            ConfigError::Parse { field, message }
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn policy_config(&self) -> PolicyConfig {
        PolicyConfig {
            delta: self.delta,
            bonus: self.bonus,
            confidence: self.confidence_constant,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |field, message: String| Err(ConfigError::Invalid { field, message });
        if self.policies.is_empty() {
            return invalid("policies", "at least one policy is required".into());
        }
        if self.seeds == 0 {
            return invalid("seeds", "at least one seed is required".into());
        }
        if self.base_seed.checked_add(self.seeds - 1).is_none() {
            return invalid("seeds", "base_seed + seeds overflows 64 bits".into());
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return invalid("delta", format!("slot length must be positive, got {}", self.delta));
        }
        if self.lambdas.values().is_empty() {
            return invalid("lambdas", "the grid is empty".into());
        }
        if self.n.values().is_empty() {
            return invalid("n", "the grid is empty".into());
        }
        if let Some(k) = self.k {
            if let Some(bad) = self.lambdas.values().iter().find(|l| l.len() != k) {
                return invalid("k", format!("k = {k} but a mean vector has {} entries", bad.len()));
            }
        }
        self.grid().map(|_| ())
    }

    /// Grid points in order: mean vectors outer, `n` inner.
    pub fn grid(&self) -> Result<Vec<GridPoint>, ConfigError> {
        let mut points = Vec::new();
        for lambdas in self.lambdas.values() {
            for n in self.n.values() {
                let params = TypeParams::new(lambdas.clone(), n).map_err(|err| ConfigError::Invalid {
                    field: if n == 0 { "n" } else { "lambdas" },
                    message: err.to_string(),
                })?;
                points.push(GridPoint { params });
            }
        }
        Ok(points)
    }

    pub fn seed_list(&self) -> impl Iterator<Item = u64> {
        self.base_seed..=self.base_seed + (self.seeds - 1)
    }
}

/// Pulls the field name out of serde's "missing field `x`" and "unknown
/// field `x`" messages.
fn top_level_field(message: &str) -> Option<String> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(message[start..start + len].to_string())
}
