use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::config::{ConfigError, ExperimentConfig};
use crate::model::{sample_instance, Instance};
use crate::policies::{run_policy, Policy, PolicyConfig};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    pub(crate) fn io(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> Self {
        let context = context.into();
        move |source| HarnessError::Io { context, source }
    }
}

/// Result of one policy on one seeded instance, paired with the OPT and
/// FTPP flow times on the same realization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub policy: Policy,
    pub lambdas: Vec<f64>,
    pub n: usize,
    pub seed: u64,
    /// NaN when the policy failed on this instance; see `error`.
    pub flow: f64,
    pub opt_flow: f64,
    pub ftpp_flow: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ExperimentRecord {
    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    pub fn cr(&self) -> f64 {
        self.flow / self.opt_flow
    }

    pub fn excess(&self) -> f64 {
        self.flow - self.ftpp_flow
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

fn flow_or_error(policy: Policy, instance: &Instance, config: &PolicyConfig) -> (f64, Option<String>) {
    match run_policy(policy, instance, config) {
        Ok(trace) => (trace.flow_time(), None),
        Err(err) => (f64::NAN, Some(err.to_string())),
    }
}

/// Runs every policy of `config` on one seeded instance.
pub fn run_cell(
    policies: &[Policy],
    instance: &Instance,
    config: &PolicyConfig,
) -> Vec<ExperimentRecord> {
    let (opt_flow, _) = flow_or_error(Policy::Opt, instance, config);
    let (ftpp_flow, _) = flow_or_error(Policy::Ftpp, instance, config);
    policies
        .iter()
        .map(|&policy| {
            let (flow, error) = match policy {
                Policy::Opt => (opt_flow, None),
                Policy::Ftpp => (ftpp_flow, None),
                other => flow_or_error(other, instance, config),
            };
            ExperimentRecord {
                policy,
                lambdas: instance.params().lambdas().to_vec(),
                n: instance.n(),
                seed: instance.seed(),
                flow,
                opt_flow,
                ftpp_flow,
                error,
            }
        })
        .collect()
}

/// Runs the whole experiment on `jobs` worker threads.
///
/// Records come back ordered by grid point, then policy in config order,
/// then seed, whatever the number of workers.
pub fn run_experiment(config: &ExperimentConfig, jobs: usize) -> Result<Vec<ExperimentRecord>, HarnessError> {
    config.validate()?;
    let grid = config.grid()?;
    let seeds: Vec<u64> = config.seed_list().collect();
    let policy_config = config.policy_config();
    let tasks: Vec<(usize, u64)> = (0..grid.len())
        .flat_map(|g| seeds.iter().map(move |&s| (g, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let cells: Vec<(usize, Vec<ExperimentRecord>)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(g, seed)| {
                let instance = sample_instance(&grid[g].params, seed);
                (g, run_cell(&config.policies, &instance, &policy_config))
            })
            .collect()
    });
    let mut keyed: Vec<(usize, usize, u64, ExperimentRecord)> = cells
        .into_iter()
        .flat_map(|(g, records)| {
            records
                .into_iter()
                .enumerate()
                .map(move |(p, record)| (g, p, record.seed, record))
        })
        .collect();
    keyed.sort_by_key(|&(g, p, seed, _)| (g, p, seed));
    Ok(keyed.into_iter().map(|(_, _, _, record)| record).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opt_row_has_unit_ratio() {
        let config =
            ExperimentConfig::from_json(r#"{"policies":["opt"],"lambdas":[1,2],"n":4,"seeds":1}"#).unwrap();
        let records = run_experiment(&config, 1).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].cr(), 1.0);
    }

    #[test]
    fn order_and_worker_independence() {
        let config = ExperimentConfig::from_json(
            r#"{"policies":["rr","ftpp","ucb-u"],"lambdas":[[1,0.25],[2,1]],"n":[3,5],"seeds":4,"base_seed":10}"#,
        )
        .unwrap();
        let one = run_experiment(&config, 1).unwrap();
        let four = run_experiment(&config, 4).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.len(), 4 * 3 * 4);
        assert_eq!(one[0].policy, Policy::Rr);
        assert_eq!(one[3].seed, 13);
        assert_eq!(one[4].policy, Policy::Ftpp);
        assert_eq!(one[12].n, 5);
        assert!(one.iter().all(|r| r.is_ok() && r.cr() >= 1.0 - 1e-12));
    }
}
