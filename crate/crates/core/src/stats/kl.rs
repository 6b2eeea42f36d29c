//! Bernoulli Kullback-Leibler divergence and the KL-UCB index.

fn x_ln_ratio(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x / y).ln()
    }
}

/// `d(p, q) = p ln(p/q) + (1-p) ln((1-p)/(1-q))`, with `0 ln 0 = 0` and
/// `+∞` when `q` sits on a boundary that `p` does not.
pub fn bernoulli_kl(p: f64, q: f64) -> f64 {
    if (q <= 0.0 && p > 0.0) || (q >= 1.0 && p < 1.0) {
        return f64::INFINITY;
    }
    (x_ln_ratio(p, q) + x_ln_ratio(1.0 - p, 1.0 - q)).max(0.0)
}

const INDEX_TOL: f64 = 1e-9;

/// Largest `q` in `[mu_hat, 1]` with `d(mu_hat, q) <= bonus / pulls`.
///
/// `pulls == 0` returns 1, the maximally optimistic index.
pub fn klucb_index(mu_hat: f64, pulls: u64, bonus: f64) -> f64 {
    let mu_hat = mu_hat.clamp(0.0, 1.0);
    if pulls == 0 || mu_hat >= 1.0 || bonus == f64::INFINITY {
        return 1.0;
    }
    let budget = bonus / pulls as f64;
    let (mut lo, mut hi) = (mu_hat, 1.0);
    while hi - lo > INDEX_TOL {
        let mid = 0.5 * (lo + hi);
        if bernoulli_kl(mu_hat, mid) <= budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
