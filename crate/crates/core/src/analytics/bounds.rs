//! Upper and lower bounds on the excess expected flow time of learning
//! policies over FTPP.

use serde::{Deserialize, Serialize};

use super::costs::expected_cost_opt;
use super::AnalyticsError;
use crate::model::TypeParams;
use crate::policies::Policy;
use crate::stats::ConfidenceConstant;

/// Which upper bound on `E[C_A] − E[C_FTPP]` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperBound {
    /// Gap-free bound for ETC-U.
    EtcU,
    /// Gap-dependent bound for ETC-U; needs pairwise distinct means.
    EtcUGap,
    /// Gap-free bound for UCB-U.
    UcbU,
    /// Gap-dependent bound for UCB-U; needs pairwise distinct means.
    UcbUGap,
    /// Two types with `λ₂ ≥ 3λ₁`.
    EtcUTight,
    /// Two types with `λ₂ ≥ 3λ₁`.
    UcbUTight,
    EtcRr,
    /// Needs `Δ ≤ λ₁/4` and `n ≥ max(20, 10 ln K)`.
    UcbRr,
    /// ETC-U specialised to two types.
    EtcUTwoTypes,
    /// ETC-RR specialised to two types.
    EtcRrTwoTypes,
}

named_variants!(UpperBound {
    EtcU => "etc-u",
    EtcUGap => "etc-u-gap",
    UcbU => "ucb-u",
    UcbUGap => "ucb-u-gap",
    EtcUTight => "etc-u-tight",
    UcbUTight => "ucb-u-tight",
    EtcRr => "etc-rr",
    UcbRr => "ucb-rr",
    EtcUTwoTypes => "etc-u-two-types",
    EtcRrTwoTypes => "etc-rr-two-types"
});

impl UpperBound {
    pub const ALL: [UpperBound; 10] = [
        UpperBound::EtcU,
        UpperBound::EtcUGap,
        UpperBound::UcbU,
        UpperBound::UcbUGap,
        UpperBound::EtcUTight,
        UpperBound::UcbUTight,
        UpperBound::EtcRr,
        UpperBound::UcbRr,
        UpperBound::EtcUTwoTypes,
        UpperBound::EtcRrTwoTypes,
    ];

    /// The policy whose excess this bound controls.
    pub fn policy(self) -> Policy {
        match self {
            Self::EtcU | Self::EtcUGap | Self::EtcUTight | Self::EtcUTwoTypes => Policy::EtcU,
            Self::UcbU | Self::UcbUGap | Self::UcbUTight => Policy::UcbU,
            Self::EtcRr | Self::EtcRrTwoTypes => Policy::EtcRr,
            Self::UcbRr => Policy::UcbRr,
        }
    }
}

/// Which lower bound on the excess of any non-preemptive policy to
/// evaluate. All are for two types except `LargeGap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBound {
    SmallGap,
    /// The `n√n` consequence of `SmallGap` for `λ₂ ≤ λ₁(1 + 1/√n)`.
    SmallGapSqrt,
    /// Worst case over the order in which types are presented.
    LargeGap,
    /// Two types with `λ₂ ≥ 3λ₁`.
    LargeGapTwoTypes,
}

named_variants!(LowerBound {
    SmallGap => "small-gap",
    SmallGapSqrt => "small-gap-sqrt",
    LargeGap => "large-gap",
    LargeGapTwoTypes => "large-gap-two-types"
});

impl LowerBound {
    pub const ALL: [LowerBound; 4] = [
        LowerBound::SmallGap,
        LowerBound::SmallGapSqrt,
        LowerBound::LargeGap,
        LowerBound::LargeGapTwoTypes,
    ];
}

fn not_applicable(what: impl std::fmt::Display, why: impl std::fmt::Display) -> AnalyticsError {
    AnalyticsError::NotApplicable(format!("{what} bound: {why}"))
}

fn two_types(what: impl std::fmt::Display, sorted: &[f64]) -> Result<(f64, f64), AnalyticsError> {
    match *sorted {
        [a, b] => Ok((a, b)),
        _ => Err(not_applicable(what, format_args!("needs exactly 2 types, got {}", sorted.len()))),
    }
}

fn distinct(what: impl std::fmt::Display, sorted: &[f64]) -> Result<(), AnalyticsError> {
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(not_applicable(what, "needs pairwise distinct means"));
    }
    Ok(())
}

/// `Σ_k Σ_{l<k} weight(l) (λ_k + λ_l)² / (λ_k − λ_l)` over sorted means,
/// with `l` counted from 1.
fn gap_sum(sorted: &[f64], weight: impl Fn(usize) -> f64) -> f64 {
    let mut total = 0.0;
    for (k, &a) in sorted.iter().enumerate() {
        for (l, &b) in sorted[..k].iter().enumerate() {
            total += weight(l + 1) * (a + b).powi(2) / (a - b);
        }
    }
    total
}

/// Upper bound on `E[C_A] − E[C_FTPP]` for the policy named by `kind`.
/// `delta` is the slot length and is only read by the UCB-RR bound.
pub fn excess_upper_bound(kind: UpperBound, params: &TypeParams, delta: Option<f64>) -> Result<f64, AnalyticsError> {
    let sorted = params.sorted_lambdas();
    let (n, k) = (params.n() as f64, sorted.len() as f64);
    let opt = expected_cost_opt(params);
    let sum: f64 = sorted.iter().sum();
    let log_k3 = ConfidenceConstant::K3.log_term(params.n(), params.k());
    let log_k2 = (2.0 * n * n * k * k).ln();
    let value = match kind {
        UpperBound::EtcU => {
            let weighted: f64 = sorted
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    let j = (i + 1) as f64;
                    (0.5 * (j - 1.0) * (2.0 * k - j) + (k - j).powi(2)) * l
                })
                .sum();
            opt / n + weighted * n * (8.0 * n * log_k3).sqrt()
        }
        UpperBound::EtcUGap => {
            distinct(kind, &sorted)?;
            opt / n + gap_sum(&sorted, |l| k - l as f64) * 8.0 * n * log_k3
        }
        UpperBound::UcbU => 2.0 * opt / n + n * (k - 1.0) * (3.0 * n * log_k2).sqrt() * sum,
        UpperBound::UcbUGap => {
            distinct(kind, &sorted)?;
            2.0 * opt / n + gap_sum(&sorted, |_| 1.0) * 3.0 * n * log_k2
        }
        UpperBound::EtcUTight | UpperBound::UcbUTight => {
            let (a, b) = two_types(kind, &sorted)?;
            if b < 3.0 * a {
                return Err(not_applicable(kind, "needs the larger mean to be at least 3 times the smaller"));
            }
            if kind == UpperBound::EtcUTight {
                12.0 * b * n * log_k3 + 2.0 * opt / n
            } else {
                4.5 * b * n * log_k2 + 4.0 * opt / n
            }
        }
        UpperBound::EtcRr => {
            let weighted: f64 = sorted
                .iter()
                .enumerate()
                .map(|(i, &l)| (k - 1.0 - i as f64).powi(2) * l)
                .sum();
            12.0 * k / n * opt + 4.0 * n * (n * log_k3).sqrt() * weighted
        }
        UpperBound::UcbRr => {
            let delta = delta.ok_or_else(|| not_applicable(kind, "needs the slot length"))?;
            if !(delta > 0.0 && delta <= sorted[0] / 4.0) {
                return Err(not_applicable(
                    kind,
                    format_args!("needs 0 < slot length <= {}/4, got {delta}", sorted[0]),
                ));
            }
            let min_n = 20f64.max(10.0 * k.ln());
            if n < min_n {
                return Err(not_applicable(kind, format_args!("needs n >= {min_n}, got {n}")));
            }
            let weighted: f64 = sorted.iter().enumerate().map(|(i, &l)| (k - 1.0 - i as f64) * l).sum();
            12.0 * k / n * opt + 6.0 * n * (2.0 * n * log_k2 + 2.0).sqrt() * weighted
        }
        UpperBound::EtcUTwoTypes => {
            let (a, b) = two_types(kind, &sorted)?;
            n * (a + b) * (8.0 * n * log_k3).sqrt() + 8.0 / n * opt
        }
        UpperBound::EtcRrTwoTypes => {
            let (a, _) = two_types(kind, &sorted)?;
            2.0 * n * a * ((4.0 * n * log_k3).sqrt() + 1.0) + 16.0 / n * opt
        }
    };
    Ok(value)
}

/// Lower bound on `E[C_A] − E[C_FTPP]`.
///
/// The small-gap forms hold for every non-preemptive policy. The large-gap
/// forms hold for the worse of the two presentation orders of the types,
/// so they bound a policy's excess on a given instance only when the
/// policy does not favour either order.
pub fn excess_lower_bound(kind: LowerBound, params: &TypeParams) -> Result<f64, AnalyticsError> {
    let sorted = params.sorted_lambdas();
    let n = params.n() as f64;
    let value = match kind {
        LowerBound::SmallGap => {
            let (a, b) = two_types(kind, &sorted)?;
            let gap = b - a;
            gap * n * n * (-n * gap * gap / (a * b)).exp() / 8.0
        }
        LowerBound::SmallGapSqrt => {
            let (a, b) = two_types(kind, &sorted)?;
            if a == b {
                return Ok(0.0);
            }
            let limit = a * (1.0 + 1.0 / n.sqrt());
            if b > limit * (1.0 + 1e-12) {
                return Err(not_applicable(kind, format_args!("needs the larger mean at most {limit}, got {b}")));
            }
            (a + b) * n * n.sqrt() * (-0.25f64).exp() / 24.0
        }
        LowerBound::LargeGap => {
            let k = sorted.len() as f64;
            let weighted: f64 = sorted
                .iter()
                .enumerate()
                .map(|(i, &l)| (2.0 * (i + 1) as f64 - k - 1.0) * l)
                .sum();
            n / k * weighted
        }
        LowerBound::LargeGapTwoTypes => {
            let (a, b) = two_types(kind, &sorted)?;
            if b < 3.0 * a {
                return Err(not_applicable(kind, "needs the larger mean to be at least 3 times the smaller"));
            }
            n * (a + b) / 4.0
        }
    };
    Ok(value)
}
