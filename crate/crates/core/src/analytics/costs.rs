//! Expected flow times of OPT, FTPP and RR, and the competitive ratios
//! derived from them.

use super::AnalyticsError;
use crate::model::TypeParams;

/// `Σ_{l<k} λ_k λ_l / (λ_k + λ_l)` over unordered pairs; the expected
/// minimum of two independent exponentials, summed.
pub(crate) fn pair_min_sum(lambdas: &[f64]) -> f64 {
    let mut total = 0.0;
    for (k, &a) in lambdas.iter().enumerate() {
        for &b in &lambdas[..k] {
            total += a * b / (a + b);
        }
    }
    total
}

/// `Σ_l (K − l) λ_l` with `λ` sorted ascending and `l` counted from 1.
pub(crate) fn delay_weighted_sum(sorted: &[f64]) -> f64 {
    let k = sorted.len();
    sorted.iter().enumerate().map(|(i, &l)| (k - 1 - i) as f64 * l).sum()
}

/// Expected flow time of the realization-aware shortest-first schedule.
pub fn expected_cost_opt(params: &TypeParams) -> f64 {
    let n = params.n() as f64;
    let lambdas = params.sorted_lambdas();
    let sum: f64 = lambdas.iter().sum();
    n * n * (sum / 4.0 + pair_min_sum(&lambdas)) + 0.75 * n * sum
}

/// Expected flow time of running whole types in increasing order of mean.
pub fn expected_cost_ftpp(params: &TypeParams) -> f64 {
    let n = params.n() as f64;
    let lambdas = params.sorted_lambdas();
    let sum: f64 = lambdas.iter().sum();
    n * n * (sum / 2.0 + delay_weighted_sum(&lambdas)) + n * sum / 2.0
}

/// Expected flow time of per-job processor sharing.
pub fn expected_cost_rr(params: &TypeParams) -> f64 {
    let n = params.n() as f64;
    let sum: f64 = params.lambdas().iter().sum();
    2.0 * expected_cost_opt(params) - n * sum
}

pub fn cr_ftpp_exact(params: &TypeParams) -> f64 {
    expected_cost_ftpp(params) / expected_cost_opt(params)
}

pub fn cr_rr(params: &TypeParams) -> f64 {
    expected_cost_rr(params) / expected_cost_opt(params)
}

/// Upper bound on the FTPP competitive ratio over all `n` for two types
/// whose means differ by the factor `lambda ≥ 1`.
pub fn cr_ftpp_upper_2types(lambda: f64) -> Result<f64, AnalyticsError> {
    if !(lambda >= 1.0 && lambda.is_finite()) {
        return Err(AnalyticsError::NotApplicable(format!(
            "the two-type ratio bound needs a mean ratio of at least 1, got {lambda}"
        )));
    }
    let gap = lambda - 1.0;
    Ok(2.0 - 4.0 * gap / ((1.0 + lambda).powi(2) + 4.0 * lambda))
}

/// `2 − f_K(λ)`, an upper bound on the FTPP competitive ratio valid for
/// every `n`.
pub fn cr_ftpp_upper_ktypes(params: &TypeParams) -> f64 {
    let lambdas = params.sorted_lambdas();
    let sum: f64 = lambdas.iter().sum();
    let pairs = pair_min_sum(&lambdas);
    let f = (2.0 * pairs - delay_weighted_sum(&lambdas)) / (sum / 4.0 + pairs);
    2.0 - f
}

/// Below this `k` the inner sums of `A_K` are added term by term.
const DIRECT_INNER_SUM_LIMIT: usize = 64;

/// `Σ_{l=1}^{k−1} 1/(k² + l²)`.
///
/// Large `k` use the Euler–Maclaurin expansion of the sum around
/// `∫₀ᵏ dt/(k²+t²) = π/(4k)`. Its odd derivative terms at 0 vanish and the
/// third derivative vanishes at `k`, so the remainder after the `k⁻⁷` term
/// is far below double precision once `k ≥ 64`.
fn inner_pair_sum(k: usize) -> f64 {
    if k < DIRECT_INNER_SUM_LIMIT {
        let k2 = (k * k) as f64;
        return (1..k).map(|l| 1.0 / (k2 + (l * l) as f64)).sum();
    }
    let k = k as f64;
    std::f64::consts::FRAC_PI_4 / k - 0.75 / (k * k) - 1.0 / (24.0 * k.powi(3)) + 1.0 / (2016.0 * k.powi(7))
}

/// Partial sums behind the hard sequence `λ̃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeSums {
    /// `H_K = Σ 1/k`
    pub harmonic: f64,
    /// `B_K = Σ 1/k²`
    pub squares: f64,
    /// `A_K = Σ_k Σ_{l<k} 1/(k² + l²)`
    pub pairs: f64,
}

impl TildeSums {
    pub fn new(k: usize) -> Self {
        // Smallest terms first keeps the rounding error of long sums low.
        let mut sums = Self {
            harmonic: 0.0,
            squares: 0.0,
            pairs: 0.0,
        };
        for j in (1..=k).rev() {
            let x = j as f64;
            sums.harmonic += 1.0 / x;
            sums.squares += 1.0 / (x * x);
            sums.pairs += inner_pair_sum(j);
        }
        sums
    }

    /// The same sums for a `K` too large to enumerate, from the
    /// Euler–Maclaurin tails of `Σ 1/k^s` beyond the directly summed head.
    /// Accurate to double precision once `K ≥ 10⁴`.
    pub fn large(k: f64) -> Result<Self, AnalyticsError> {
        if !(k >= 1e4 && k.is_finite()) {
            return Err(AnalyticsError::NotApplicable(format!(
                "the large-K expansion needs K >= 1e4, got {k}"
            )));
        }
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        const ZETA3: f64 = 1.202_056_903_159_594_3;
        const ZETA7: f64 = 1.008_349_277_381_922_8;
        let head = DIRECT_INNER_SUM_LIMIT - 1;
        let power_sum = |s: i32| -> f64 { (1..=head).rev().map(|j| (j as f64).powi(-s)).sum() };
        let harmonic = k.ln() + EULER_GAMMA + 0.5 / k - 1.0 / (12.0 * k * k);
        let squares = std::f64::consts::PI.powi(2) / 6.0 - 1.0 / k + 0.5 / (k * k);
        let cubes = ZETA3 - 0.5 / (k * k);
        let head_pairs: f64 = (1..=head).rev().map(inner_pair_sum).sum();
        let pairs = head_pairs + std::f64::consts::FRAC_PI_4 * (harmonic - power_sum(1))
            - 0.75 * (squares - power_sum(2))
            - (cubes - power_sum(3)) / 24.0
            + (ZETA7 - power_sum(7)) / 2016.0;
        Ok(Self {
            harmonic,
            squares,
            pairs,
        })
    }

    pub fn ratio(&self) -> f64 {
        (self.harmonic - self.squares / 2.0) / (self.squares / 4.0 + self.pairs)
    }
}

/// The means `λ̃_k = 1/(K−k+1)²` and the FTPP competitive ratio bound they
/// attain. The ratio tends to 4/π as `K` grows.
pub fn cr_ftpp_tilde_series(k: usize) -> Result<(Vec<f64>, f64), AnalyticsError> {
    if k == 0 {
        return Err(AnalyticsError::NotApplicable("the sequence needs at least one type".into()));
    }
    let lambdas = (1..=k).map(|j| 1.0 / ((k - j + 1) as f64).powi(2)).collect();
    Ok((lambdas, TildeSums::new(k).ratio()))
}
