use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::config::Aggregation;
use super::run::ExperimentRecord;
use crate::policies::Policy;

pub const BOOTSTRAP_RESAMPLES: usize = 1000;
/// Seed of the resampling stream, so summaries are reproducible.
pub const BOOTSTRAP_SEED: u64 = 0x5eed_b007;

/// Aggregated statistics of one `(policy, lambdas, n)` group.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub policy: Policy,
    pub lambdas: Vec<f64>,
    pub n: usize,
    pub mean_cr: f64,
    pub stderr_cr: f64,
    pub mean_excess: f64,
    pub stderr_excess: f64,
    /// Records that ran without error.
    pub count: usize,
}

impl SummaryRow {
    pub fn k(&self) -> usize {
        self.lambdas.len()
    }
}

/// Sample mean and standard error of the mean; the error is 0 for fewer
/// than two values.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let count = values.len();
    if count == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / count as f64;
    if count < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
    (mean, (var / count as f64).sqrt())
}

/// Sample standard deviation.
pub fn std_dev(values: &[f64]) -> f64 {
    let (_, stderr) = mean_and_stderr(values);
    stderr * (values.len() as f64).sqrt()
}

/// `mean(flow) / mean(opt)` and a bootstrap standard error: the half-width
/// of the 95% percentile interval over resampled seeds, divided by 1.96.
pub fn ratio_of_means(flows: &[f64], opts: &[f64]) -> (f64, f64) {
    let count = flows.len();
    let ratio = |idx: &mut dyn Iterator<Item = usize>| {
        let (mut f, mut o) = (0.0, 0.0);
        for i in idx {
            f += flows[i];
            o += opts[i];
        }
        f / o
    };
    let point = ratio(&mut (0..count));
    if count < 2 {
        return (point, 0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(BOOTSTRAP_SEED);
    let mut draws: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| {
            let mut idx = (0..count).map(|_| ((rng.next_u64() as u128 * count as u128) >> 64) as usize);
            ratio(&mut idx)
        })
        .collect();
    draws.sort_by(f64::total_cmp);
    let quantile = |q: f64| draws[((q * (BOOTSTRAP_RESAMPLES - 1) as f64).round()) as usize];
    (point, (quantile(0.975) - quantile(0.025)) / 2.0 / 1.96)
}

/// One summary row per `(lambdas, n, policy)` group, in first-appearance
/// order. Failed records are left out of every statistic.
pub fn aggregate(records: &[ExperimentRecord], mode: Aggregation) -> Vec<SummaryRow> {
    let mut groups: Vec<(Policy, &[f64], usize, Vec<&ExperimentRecord>)> = Vec::new();
    for record in records {
        let found = groups
            .iter_mut()
            .find(|(p, l, n, _)| *p == record.policy && *l == record.lambdas.as_slice() && *n == record.n);
        match found {
            Some(group) => group.3.push(record),
            None => groups.push((record.policy, &record.lambdas, record.n, vec![record])),
        }
    }
    groups
        .into_iter()
        .map(|(policy, lambdas, n, members)| {
            let ok: Vec<&ExperimentRecord> = members.into_iter().filter(|r| r.is_ok()).collect();
            let crs: Vec<f64> = ok.iter().map(|r| r.cr()).collect();
            let excesses: Vec<f64> = ok.iter().map(|r| r.excess()).collect();
            let (mean_cr, stderr_cr) = match mode {
                Aggregation::MeanOfRatios => mean_and_stderr(&crs),
                Aggregation::RatioOfMeans => {
                    let flows: Vec<f64> = ok.iter().map(|r| r.flow).collect();
                    let opts: Vec<f64> = ok.iter().map(|r| r.opt_flow).collect();
                    ratio_of_means(&flows, &opts)
                }
            };
            let (mean_excess, stderr_excess) = mean_and_stderr(&excesses);
            SummaryRow {
                policy,
                lambdas: lambdas.to_vec(),
                n,
                mean_cr,
                stderr_cr,
                mean_excess,
                stderr_excess,
                count: ok.len(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn record(flow: f64, opt: f64) -> ExperimentRecord {
        ExperimentRecord {
            policy: Policy::Rr,
            lambdas: vec![1.0],
            n: 1,
            seed: 0,
            flow,
            opt_flow: opt,
            ftpp_flow: opt,
            error: None,
        }
    }

    #[test]
    fn single_record() {
        let rows = aggregate(&[record(3.0, 2.0)], Aggregation::MeanOfRatios);
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].mean_cr, rows[0].stderr_cr, rows[0].count), (1.5, 0.0, 1));
        let rows = aggregate(&[record(3.0, 2.0)], Aggregation::RatioOfMeans);
        assert_eq!((rows[0].mean_cr, rows[0].stderr_cr), (1.5, 0.0));
    }

    #[test]
    fn two_point_mean_and_stderr() {
        let rows = aggregate(&[record(1.0, 1.0), record(3.0, 1.0)], Aggregation::MeanOfRatios);
        assert_eq!(rows[0].mean_cr, 2.0);
        assert_abs_diff_eq!(rows[0].stderr_cr, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn modes_differ_on_skewed_data() {
        // Ratios 1 and 3 average to 2; pooled flows give (1 + 30)/(1 + 10).
        let records = [record(1.0, 1.0), record(30.0, 10.0)];
        let mor = aggregate(&records, Aggregation::MeanOfRatios);
        let rom = aggregate(&records, Aggregation::RatioOfMeans);
        assert_eq!(mor[0].mean_cr, 2.0);
        assert_abs_diff_eq!(rom[0].mean_cr, 31.0 / 11.0, epsilon = 1e-15);
        assert!(rom[0].stderr_cr > 0.0);
        assert_eq!(rom, aggregate(&records, Aggregation::RatioOfMeans));
    }

    #[test]
    fn failed_records_are_skipped() {
        let mut bad = record(f64::NAN, 1.0);
        bad.error = Some("boom".into());
        let rows = aggregate(&[record(2.0, 1.0), bad], Aggregation::MeanOfRatios);
        assert_eq!((rows[0].mean_cr, rows[0].count), (2.0, 1));
    }
}
