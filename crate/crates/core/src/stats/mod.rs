//! Confidence radii, χ² quantiles and KL-UCB indices used by the learning
//! policies.

mod gamma;
mod kl;

pub use gamma::{chi2_cdf, chi2_quantile, chi2_sf, chi2_upper_quantile, gamma_p, gamma_q, ln_gamma};
pub use kl::{bernoulli_kl, klucb_index};


use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("probability must lie strictly between 0 and 1, got {0}")]
    Probability(f64),
    #[error("degrees of freedom must be at least 1")]
    Dof,
    #[error("{0} must be nonnegative and finite, got {1}")]
    Negative(&'static str, f64),
}

/// Power of K inside the log of the elimination radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfidenceConstant {
    /// `ln(2 n² K³)`
    #[default]
    K3,
    /// `ln(2 n² K⁴)`
    K4,
}

impl ConfidenceConstant {
    pub fn log_term(self, n: usize, k: usize) -> f64 {
        let (n, k) = (n as f64, k as f64);
        let power = match self {
            Self::K3 => 3,
            Self::K4 => 4,
        };
        (2.0 * n * n * k.powi(power)).ln()
    }
}

/// Numerator of the KL-UCB exploration budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KlBonus {
    /// `ln(n² K²)`
    #[default]
    N2K2,
    /// `ln(n²)`
    N2,
}

impl KlBonus {
    pub fn value(self, n: usize, k: usize) -> f64 {
        let (n, k) = (n as f64, k as f64);
        match self {
            Self::N2K2 => (n * n * k * k).ln(),
            Self::N2 => (n * n).ln(),
        }
    }
}

named_variants!(ConfidenceConstant { K3 => "k3", K4 => "k4" });
named_variants!(KlBonus { N2K2 => "n2k2", N2 => "n2" });

/// Elimination radius `sqrt(ln(2 n² K³) / (2m))`; infinite when `m == 0`.
pub fn hoeffding_radius(m: u64, n: usize, k: usize) -> f64 {
    hoeffding_radius_with(m, n, k, ConfidenceConstant::K3)
}

pub fn hoeffding_radius_with(m: u64, n: usize, k: usize, constant: ConfidenceConstant) -> f64 {
    if m == 0 {
        return f64::INFINITY;
    }
    (constant.log_term(n, k) / (2.0 * m as f64)).sqrt()
}

/// Tail probability used by the UCB-U lower confidence bound.
pub fn ucbu_tail(n: usize, k: usize) -> f64 {
    1.0 / (2.0 * (n * n * k * k) as f64)
}

/// Optimistic lower bound on a mean size from `m` observed sizes summing to
/// `sum_sizes`: `2 sum / χ²_{2m}(1 - 1/(2n²K²))`, and 0 before any
/// observation.
pub fn ucbu_lower_bound(sum_sizes: f64, m: u64, n: usize, k: usize) -> Result<f64, StatsError> {
    if !(sum_sizes >= 0.0 && sum_sizes.is_finite()) {
        return Err(StatsError::Negative("sum_sizes", sum_sizes));
    }
    if m == 0 {
        return Ok(0.0);
    }
    let dof = u32::try_from(2 * m).map_err(|_| StatsError::Dof)?;
    Ok(2.0 * sum_sizes / chi2_upper_quantile(dof, ucbu_tail(n, k))?)
}

/// Win/total counts of one ordered pair of types.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairedComparison {
    pub wins: u64,
    pub total: u64,
}

impl PairedComparison {
    pub fn record(&mut self, won: bool) {
        self.total += 1;
        self.wins += u64::from(won);
    }

    /// Empirical win rate; 0 before any comparison.
    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.wins as f64 / self.total as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn frozen_radii() {
        assert_abs_diff_eq!(hoeffding_radius(8, 50, 2), (40000f64.ln() / 16.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(hoeffding_radius(8, 50, 2), 0.81382, epsilon = 1e-5);
        assert_abs_diff_eq!(hoeffding_radius(30, 50, 2), 0.42025, epsilon = 1e-5);
        assert_eq!(hoeffding_radius(0, 50, 2), f64::INFINITY);
        assert!(hoeffding_radius_with(8, 50, 2, ConfidenceConstant::K4) > hoeffding_radius(8, 50, 2));
    }

    #[test]
    fn radius_scaling_identity() {
        for m in [1u64, 2, 7, 100, 12345] {
            for (n, k) in [(1, 2), (50, 2), (400, 5)] {
                let lhs = hoeffding_radius(m, n, k) * (2.0 * m as f64).sqrt();
                let rhs = ConfidenceConstant::K3.log_term(n, k).sqrt();
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        // n = 2, K = 2: tail 1/32, χ²₂ quantile -2 ln(1/32).
        let one = ucbu_lower_bound(1.0, 1, 2, 2).unwrap();
        assert_abs_diff_eq!(one, 1.0 / 32f64.ln(), epsilon = 1e-9);
        assert_abs_diff_eq!(one, 0.28854, epsilon = 1e-5);
        assert_abs_diff_eq!(ucbu_lower_bound(3.0, 1, 2, 2).unwrap(), 0.86562, epsilon = 1e-5);
        // n = 1, K = 2: tail 1/8.
        assert_abs_diff_eq!(ucbu_lower_bound(1.0, 1, 1, 2).unwrap(), 1.0 / 8f64.ln(), epsilon = 1e-9);
        assert_eq!(ucbu_lower_bound(5.0, 0, 10, 3).unwrap(), 0.0);
        assert!(ucbu_lower_bound(-1.0, 1, 10, 3).is_err());
    }

    #[test]
    fn names_round_trip() {
        for c in [ConfidenceConstant::K3, ConfidenceConstant::K4] {
            assert_eq!(c.to_string().parse::<ConfidenceConstant>().unwrap(), c);
        }
        for b in [KlBonus::N2K2, KlBonus::N2] {
            assert_eq!(b.to_string().parse::<KlBonus>().unwrap(), b);
        }
        assert!("k5".parse::<ConfidenceConstant>().is_err());
        assert_abs_diff_eq!(KlBonus::N2K2.value(10, 2), 400f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(KlBonus::N2.value(10, 2), 100f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn paired_comparison_rate() {
        let mut pc = PairedComparison::default();
        assert_eq!(pc.rate(), 0.0);
        pc.record(true);
        pc.record(false);
        pc.record(true);
        assert_eq!(pc, PairedComparison { wins: 2, total: 3 });
        assert_abs_diff_eq!(pc.rate(), 2.0 / 3.0);
    }
}
