use crate::engine::inversion_counts;
use crate::model::{RunTrace, TypeParams};

/// Pathwise excess of a non-preemptive run over FTPP in expectation:
/// `Σ (λ_k − λ_l) · #{(j, i): end[j][k] ≤ begin[i][l]}` over ordered type
/// pairs with `λ_k > λ_l`. Its mean over seeds equals the policy's expected
/// excess over FTPP.
pub fn nonpreemptive_excess_decomposition(trace: &RunTrace, params: &TypeParams) -> f64 {
    let counts = inversion_counts(trace);
    let lambdas = params.lambdas();
    let mut total = 0.0;
    for (k, row) in counts.iter().enumerate() {
        for (l, &count) in row.iter().enumerate() {
            if lambdas[k] > lambdas[l] {
                total += (lambdas[k] - lambdas[l]) * count as f64;
            }
        }
    }
    total
}

/// The same inversion sum plus the `(K−1) n Σλ` allowance that makes it an
/// upper bound on the expected excess of a type-wise non-preemptive run.
pub fn typewise_excess_decomposition(trace: &RunTrace, params: &TypeParams) -> f64 {
    let slack = (params.k() - 1) as f64 * params.n() as f64 * params.lambdas().iter().sum::<f64>();
    nonpreemptive_excess_decomposition(trace, params) + slack
}
