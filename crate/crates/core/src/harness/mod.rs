//! Seeded Monte-Carlo experiments: configuration, parallel execution,
//! aggregation and CSV/JSON output.

mod aggregate;
mod config;
mod figures;
mod output;
mod run;

pub use aggregate::{aggregate, mean_and_stderr, ratio_of_means, std_dev, SummaryRow, BOOTSTRAP_RESAMPLES, BOOTSTRAP_SEED};
pub use config::{Aggregation, ConfigError, ExperimentConfig, Grid, GridPoint};
pub use figures::{figure_experiments, write_figures, FigureScale, FigureSpec};
pub use output::{
    format_lambdas, format_sig12, write_experiment_outputs, write_records_csv, write_summary_csv, RECORDS_HEADER,
    SUMMARY_HEADER,
};
pub use run::{run_cell, run_experiment, ExperimentRecord, HarnessError};
