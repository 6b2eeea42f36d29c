use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::aggregate::{aggregate, SummaryRow};
use super::config::{Aggregation, ExperimentConfig};
use super::run::{ExperimentRecord, HarnessError};
use crate::model::GENERATOR_ID;

pub const RECORDS_HEADER: [&str; 10] =
    ["policy", "K", "n", "lambdas", "seed", "flow", "opt_flow", "ftpp_flow", "cr", "excess"];
pub const SUMMARY_HEADER: [&str; 9] = [
    "policy",
    "K",
    "n",
    "lambdas",
    "mean_cr",
    "stderr_cr",
    "mean_excess",
    "stderr_excess",
    "count",
];

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros
/// removed, scientific notation outside `1e-5 ..= 1e12`.
pub fn format_sig12(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa.to_string()), exp.abs())
    }
}

pub fn format_lambdas(lambdas: &[f64]) -> String {
    lambdas.iter().map(|&l| format_sig12(l)).collect::<Vec<_>>().join(";")
}

pub fn write_records_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORDS_HEADER)?;
    for r in records {
        w.write_record([
            r.policy.to_string(),
            r.k().to_string(),
            r.n.to_string(),
            format_lambdas(&r.lambdas),
            r.seed.to_string(),
            format_sig12(r.flow),
            format_sig12(r.opt_flow),
            format_sig12(r.ftpp_flow),
            format_sig12(r.cr()),
            format_sig12(r.excess()),
        ])?;
    }
    w.flush().map_err(HarnessError::io("writing records"))?;
    Ok(())
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for r in rows {
        w.write_record([
            r.policy.to_string(),
            r.k().to_string(),
            r.n.to_string(),
            format_lambdas(&r.lambdas),
            format_sig12(r.mean_cr),
            format_sig12(r.stderr_cr),
            format_sig12(r.mean_excess),
            format_sig12(r.stderr_excess),
            r.count.to_string(),
        ])?;
    }
    w.flush().map_err(HarnessError::io("writing summary"))?;
    Ok(())
}

#[derive(Serialize)]
struct Manifest<'a> {
    generator: &'a str,
    crate_version: &'a str,
    aggregation: Aggregation,
    records: usize,
    failed_records: Vec<&'a ExperimentRecord>,
    config: &'a ExperimentConfig,
}

fn create(path: &Path) -> Result<fs::File, HarnessError> {
    fs::File::create(path).map_err(HarnessError::io(format!("creating {}", path.display())))
}

/// Writes `records.csv`, `summary.csv` (in the configured aggregation),
/// one summary per aggregation mode, and `manifest.json` into `dir`.
pub fn write_experiment_outputs(
    dir: &Path,
    config: &ExperimentConfig,
    records: &[ExperimentRecord],
) -> Result<Vec<SummaryRow>, HarnessError> {
    fs::create_dir_all(dir).map_err(HarnessError::io(format!("creating {}", dir.display())))?;
    write_records_csv(records, create(&dir.join("records.csv"))?)?;
    let mut configured = Vec::new();
    for mode in [Aggregation::MeanOfRatios, Aggregation::RatioOfMeans] {
        let rows = aggregate(records, mode);
        let name = format!("summary_{}.csv", mode.to_string().replace('-', "_"));
        write_summary_csv(&rows, create(&dir.join(name))?)?;
        if mode == config.aggregation {
            configured = rows;
        }
    }
    write_summary_csv(&configured, create(&dir.join("summary.csv"))?)?;
    let manifest = Manifest {
        generator: GENERATOR_ID,
        crate_version: env!("CARGO_PKG_VERSION"),
        aggregation: config.aggregation,
        records: records.len(),
        failed_records: records.iter().filter(|r| !r.is_ok()).collect(),
        config,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(dir.join("manifest.json"), json + "\n").map_err(HarnessError::io("writing manifest.json"))?;
    Ok(configured)
}
