//! Domain types shared by every other module: type parameters, sampled
//! instances and run traces.

mod csv_io;
mod sampling;
mod trace;

pub use csv_io::{
    parse_instance_csv, parse_lambda_list, write_instance_csv, InstanceCsvError, LambdaListError,
};
pub use sampling::{sample_instance, standard_exponential, Instance, GENERATOR_ID};
pub use trace::RunTrace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("at least one job type is required")]
    NoTypes,
    #[error("jobs per type must be at least 1")]
    NoJobs,
    #[error("mean size of type {index} must be positive and finite, got {value}")]
    BadLambda { index: usize, value: f64 },
    #[error("instance is not rectangular: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("job size at row {row}, type {ty} must be positive and finite, got {value}")]
    BadSize { row: usize, ty: usize, value: f64 },
}

/// Mean sizes of the K job types and the number of jobs of each type.
///
/// No ordering is imposed on `lambdas`; analytics sort internally and
/// learning policies never see the values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeParams {
    lambdas: Vec<f64>,
    n: usize,
}

impl TypeParams {
    pub fn new(lambdas: Vec<f64>, n: usize) -> Result<Self, ParamError> {
        if lambdas.is_empty() {
            return Err(ParamError::NoTypes);
        }
        if n == 0 {
            return Err(ParamError::NoJobs);
        }
        for (index, &value) in lambdas.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ParamError::BadLambda { index, value });
            }
        }
        Ok(Self { lambdas, n })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// Jobs per type.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of types.
    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    /// Total number of jobs, `n * K`.
    pub fn total_jobs(&self) -> usize {
        self.n * self.k()
    }

    /// Mean sizes sorted ascending.
    pub fn sorted_lambdas(&self) -> Vec<f64> {
        let mut sorted = self.lambdas.clone();
        sorted.sort_by(f64::total_cmp);
        sorted
    }

    /// Type indices ordered by increasing mean size, ties by index.
    pub fn types_by_mean(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.k()).collect();
        order.sort_by(|&a, &b| self.lambdas[a].total_cmp(&self.lambdas[b]).then(a.cmp(&b)));
        order
    }

    pub fn scaled(&self, factor: f64) -> Result<Self, ParamError> {
        Self::new(self.lambdas.iter().map(|l| l * factor).collect(), self.n)
    }
}

/// A single job: its type and its rank within the type (both zero-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JobId {
    pub ty: usize,
    pub index: usize,
}

impl JobId {
    pub fn new(ty: usize, index: usize) -> Self {
        Self { ty, index }
    }
}
