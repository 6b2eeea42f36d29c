//! Data files for the plotting front end: one experiment per figure, its
//! summaries, and a figure spec that tells the plotter what to draw.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{Aggregation, ExperimentConfig, Grid};
use super::output::write_experiment_outputs;
use super::run::{run_experiment, HarnessError};
use crate::policies::{Policy, DEFAULT_DELTA};
use crate::stats::{ConfidenceConstant, KlBonus};

/// What the plotter should draw from a summary CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    /// Summary CSV, relative to the spec file.
    pub input: String,
    /// `n`, or `lambda_1` for the first entry of the `lambdas` column.
    pub x: String,
    /// `mean_cr`, or `mean_cr_minus_ftpp` for the gap to FTPP's mean CR.
    pub y: String,
    pub log_x: bool,
    pub log_y: bool,
    pub title: String,
    /// Image path, relative to the spec file.
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FigureScale {
    /// Seed counts and grids of the published figures.
    Paper,
    /// The smaller grids used by the acceptance suite.
    #[default]
    Desk,
}

named_variants!(FigureScale { Paper => "paper", Desk => "desk" });

fn config(policies: &[Policy], lambdas: Vec<Vec<f64>>, n: Vec<usize>, seeds: u64) -> ExperimentConfig {
    ExperimentConfig {
        policies: policies.to_vec(),
        lambdas: Grid::Many(lambdas),
        n: Grid::Many(n),
        k: None,
        seeds,
        base_seed: 0,
        delta: DEFAULT_DELTA,
        bonus: KlBonus::default(),
        confidence_constant: ConfidenceConstant::default(),
        aggregation: Aggregation::MeanOfRatios,
    }
}

const COMPARED: [Policy; 6] = [Policy::Ftpp, Policy::Rr, Policy::EtcU, Policy::UcbU, Policy::EtcRr, Policy::UcbRr];

/// The experiments behind each figure, with their specs.
pub fn figure_experiments(scale: FigureScale) -> Vec<(&'static str, ExperimentConfig, FigureSpec)> {
    let spec = |name: &str, x: &str, y: &str, log_x: bool, log_y: bool, title: &str| FigureSpec {
        input: format!("{name}/summary.csv"),
        x: x.into(),
        y: y.into(),
        log_x,
        log_y,
        title: title.into(),
        output: format!("{name}.png"),
    };
    let (fig1_n, fig1_seeds, fig2_l1, fig2_seeds, lsept_n, lsept_seeds) = match scale {
        FigureScale::Paper => (
            vec![10, 20, 40, 80, 160, 320],
            400,
            vec![0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
            5000,
            vec![25, 50, 100, 200],
            200,
        ),
        FigureScale::Desk => (
            vec![25, 100, 400],
            400,
            vec![0.02, 0.05, 0.1, 0.2, 0.5, 0.9],
            2000,
            vec![50, 200],
            200,
        ),
    };
    let mut lsept_policies = COMPARED.to_vec();
    lsept_policies.push(Policy::Lsept);
    vec![
        (
            "figure1",
            config(&COMPARED, vec![vec![1.0, 0.25]], fig1_n, fig1_seeds),
            spec("figure1", "n", "mean_cr", true, false, "Competitive ratio against the number of jobs per type"),
        ),
        (
            "figure2",
            config(&COMPARED, fig2_l1.into_iter().map(|l| vec![l, 1.0]).collect(), vec![50], fig2_seeds),
            spec(
                "figure2",
                "lambda_1",
                "mean_cr_minus_ftpp",
                false,
                true,
                "Competitive ratio above FTPP against the smaller mean",
            ),
        ),
        (
            "lsept",
            config(&lsept_policies, vec![vec![0.8, 1.0]], lsept_n, lsept_seeds),
            spec("lsept", "n", "mean_cr", true, false, "Greedy empirical-mean policy against the learners"),
        ),
    ]
}

/// Runs every figure experiment and writes `<name>/…` result directories
/// plus `<name>.json` figure specs under `dir`.
pub fn write_figures(dir: &Path, scale: FigureScale, jobs: usize) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(HarnessError::io(format!("creating {}", dir.display())))?;
    for (name, config, spec) in figure_experiments(scale) {
        let records = run_experiment(&config, jobs)?;
        let sub = dir.join(name);
        write_experiment_outputs(&sub, &config, &records)?;
        fs::write(sub.join("config.json"), config.to_json() + "\n")
            .map_err(HarnessError::io(format!("writing {name}/config.json")))?;
        let json = serde_json::to_string_pretty(&spec).expect("spec serializes");
        fs::write(dir.join(format!("{name}.json")), json + "\n")
            .map_err(HarnessError::io(format!("writing {name}.json")))?;
    }
    Ok(())
}
