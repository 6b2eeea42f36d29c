//! Closed-form expected costs, competitive ratios and excess-cost bounds.
//!
//! Every formula sorts the means ascending internally, so inputs may come
//! in any order.

mod bounds;
mod costs;
mod decomposition;

pub use bounds::{excess_lower_bound, excess_upper_bound, LowerBound, UpperBound};
pub use costs::{
    cr_ftpp_exact, cr_ftpp_tilde_series, cr_ftpp_upper_2types, cr_ftpp_upper_ktypes, cr_rr, expected_cost_ftpp,
    expected_cost_opt, expected_cost_rr, TildeSums,
};
pub use decomposition::{nonpreemptive_excess_decomposition, typewise_excess_decomposition};

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::model::{ParamError, TypeParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("missing input: {0}")]
    MissingInput(&'static str),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// Every formula the crate can evaluate by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaKind {
    CostOpt,
    CostFtpp,
    CostRr,
    CrFtpp,
    CrRr,
    CrFtppUpper2Types,
    CrFtppUpperKTypes,
    CrFtppTilde,
    Upper(UpperBound),
    Lower(LowerBound),
}

const SIMPLE_KINDS: [(FormulaKind, &str); 8] = [
    (FormulaKind::CostOpt, "cost-opt"),
    (FormulaKind::CostFtpp, "cost-ftpp"),
    (FormulaKind::CostRr, "cost-rr"),
    (FormulaKind::CrFtpp, "cr-ftpp"),
    (FormulaKind::CrRr, "cr-rr"),
    (FormulaKind::CrFtppUpper2Types, "cr-ftpp-upper-2types"),
    (FormulaKind::CrFtppUpperKTypes, "cr-ftpp-upper-ktypes"),
    (FormulaKind::CrFtppTilde, "cr-ftpp-tilde"),
];

impl FormulaKind {
    pub fn all() -> Vec<FormulaKind> {
        SIMPLE_KINDS
            .iter()
            .map(|&(kind, _)| kind)
            .chain(UpperBound::ALL.into_iter().map(FormulaKind::Upper))
            .chain(LowerBound::ALL.into_iter().map(FormulaKind::Lower))
            .collect()
    }
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Upper(b) => write!(f, "upper-{b}"),
            Self::Lower(b) => write!(f, "lower-{b}"),
            simple => {
                let name = SIMPLE_KINDS.iter().find(|(k, _)| k == simple).map(|(_, name)| *name);
                f.write_str(name.expect("every simple kind is named"))
            }
        }
    }
}

impl FromStr for FormulaKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(&(kind, _)) = SIMPLE_KINDS.iter().find(|(_, name)| *name == s) {
            return Ok(kind);
        }
        let parsed = if let Some(rest) = s.strip_prefix("upper-") {
            rest.parse().ok().map(FormulaKind::Upper)
        } else if let Some(rest) = s.strip_prefix("lower-") {
            rest.parse().ok().map(FormulaKind::Lower)
        } else {
            None
        };
        parsed.ok_or_else(|| {
            let names: Vec<String> = FormulaKind::all().iter().map(ToString::to_string).collect();
            format!("unknown formula {s:?}, expected one of: {}", names.join(", "))
        })
    }
}

impl Serialize for FormulaKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Arguments a formula may read. Each formula checks for the ones it needs.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct FormulaInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Number of types for the `λ̃` sequence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Ratio of the larger to the smaller mean for the two-type ratio bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// Slot length.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

impl FormulaInputs {
    fn params(&self) -> Result<TypeParams, AnalyticsError> {
        let lambdas = self.lambdas.clone().ok_or(AnalyticsError::MissingInput("lambdas"))?;
        let n = self.n.ok_or(AnalyticsError::MissingInput("n"))?;
        Ok(TypeParams::new(lambdas, n)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostFormulaResult {
    pub kind: FormulaKind,
    pub value: f64,
}

pub fn evaluate(kind: FormulaKind, inputs: &FormulaInputs) -> Result<CostFormulaResult, AnalyticsError> {
    let value = match kind {
        FormulaKind::CostOpt => expected_cost_opt(&inputs.params()?),
        FormulaKind::CostFtpp => expected_cost_ftpp(&inputs.params()?),
        FormulaKind::CostRr => expected_cost_rr(&inputs.params()?),
        FormulaKind::CrFtpp => cr_ftpp_exact(&inputs.params()?),
        FormulaKind::CrRr => cr_rr(&inputs.params()?),
        FormulaKind::CrFtppUpper2Types => {
            let ratio = match (inputs.ratio, &inputs.lambdas) {
                (Some(r), _) => r,
                (None, Some(lambdas)) if lambdas.len() == 2 => {
                    TypeParams::new(lambdas.clone(), 1)?;
                    lambdas[0].max(lambdas[1]) / lambdas[0].min(lambdas[1])
                }
                _ => return Err(AnalyticsError::MissingInput("ratio")),
            };
            cr_ftpp_upper_2types(ratio)?
        }
        FormulaKind::CrFtppUpperKTypes => {
            let lambdas = inputs.lambdas.clone().ok_or(AnalyticsError::MissingInput("lambdas"))?;
            cr_ftpp_upper_ktypes(&TypeParams::new(lambdas, inputs.n.unwrap_or(1))?)
        }
        FormulaKind::CrFtppTilde => cr_ftpp_tilde_series(inputs.k.ok_or(AnalyticsError::MissingInput("k"))?)?.1,
        FormulaKind::Upper(bound) => excess_upper_bound(bound, &inputs.params()?, inputs.delta)?,
        FormulaKind::Lower(bound) => excess_lower_bound(bound, &inputs.params()?)?,
    };
    Ok(CostFormulaResult { kind, value })
}
