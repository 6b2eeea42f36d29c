use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{JobId, ParamError, TypeParams};

/// Name and version of the size generator; written into every output file.
///
/// Type `k` draws from ChaCha8 seeded with `seed` on stream `k`; job `i` of
/// that type consumes the `i`-th 64-bit word, mapped to the open interval
/// (0, 1) as `((w >> 11) + 0.5) / 2^53`, and its size is `lambda_k * -ln(u)`.
pub const GENERATOR_ID: &str = "chacha8-stream-per-type/v1";

/// Realized job sizes for one seed, stored row-major as `sizes[i][k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    params: TypeParams,
    seed: u64,
    sizes: Vec<Vec<f64>>,
}

impl Instance {
    /// Builds an instance from explicit sizes (rows are jobs, columns types).
    pub fn from_sizes(params: TypeParams, seed: u64, sizes: Vec<Vec<f64>>) -> Result<Self, ParamError> {
        let k = params.k();
        if sizes.len() != params.n() {
            return Err(ParamError::Ragged {
                row: sizes.len(),
                found: 0,
                expected: k,
            });
        }
        for (row, values) in sizes.iter().enumerate() {
            if values.len() != k {
                return Err(ParamError::Ragged {
                    row,
                    found: values.len(),
                    expected: k,
                });
            }
            for (ty, &value) in values.iter().enumerate() {
                if !(value > 0.0 && value.is_finite()) {
                    return Err(ParamError::BadSize { row, ty, value });
                }
            }
        }
        Ok(Self { params, seed, sizes })
    }

    /// Convenience for tests and examples: one column of sizes per type.
    /// Means are set to the column averages.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self, ParamError> {
        let k = columns.len();
        if k == 0 {
            return Err(ParamError::NoTypes);
        }
        let n = columns[0].len();
        let lambdas = columns
            .iter()
            .map(|c| c.iter().sum::<f64>() / c.len().max(1) as f64)
            .collect();
        let params = TypeParams::new(lambdas, n)?;
        let mut sizes = vec![Vec::with_capacity(k); n];
        for (ty, column) in columns.iter().enumerate() {
            if column.len() != n {
                return Err(ParamError::Ragged {
                    row: ty,
                    found: column.len(),
                    expected: n,
                });
            }
            for (i, &v) in column.iter().enumerate() {
                sizes[i].push(v);
            }
        }
        Self::from_sizes(params, 0, sizes)
    }

    pub fn params(&self) -> &TypeParams {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn k(&self) -> usize {
        self.params.k()
    }

    pub fn size(&self, job: JobId) -> f64 {
        self.sizes[job.index][job.ty]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.sizes
    }

    pub fn column(&self, ty: usize) -> impl Iterator<Item = f64> + '_ {
        self.sizes.iter().map(move |row| row[ty])
    }

    pub fn total_work(&self) -> f64 {
        self.sizes.iter().flatten().sum()
    }

    /// The same realization with every size multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, ParamError> {
        let sizes = self
            .sizes
            .iter()
            .map(|row| row.iter().map(|v| v * factor).collect())
            .collect();
        Self::from_sizes(self.params.scaled(factor)?, self.seed, sizes)
    }
}

/// Standard exponential draws of one type's stream.
pub fn standard_exponential(seed: u64, ty: usize, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(ty as u64);
    (0..count)
        .map(|_| {
            let word = rng.next_u64();
            let u = ((word >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
            -u.ln()
        })
        .collect()
}

/// Samples `n` i.i.d. exponential sizes per type, deterministically in
/// `(params, seed)`.
pub fn sample_instance(params: &TypeParams, seed: u64) -> Instance {
    let n = params.n();
    let columns: Vec<Vec<f64>> = params
        .lambdas()
        .iter()
        .enumerate()
        .map(|(ty, &lambda)| {
            standard_exponential(seed, ty, n)
                .into_iter()
                .map(|e| lambda * e)
                .collect()
        })
        .collect();
    let sizes = (0..n)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    Instance {
        params: params.clone(),
        seed,
        sizes,
    }
}
