use crate::engine::{NonPreemptiveView, Selector};
use crate::stats::{chi2_upper_quantile, ucbu_tail};

/// Optimistic non-preemptive policy: runs the unfinished type whose lower
/// confidence bound on the mean size is smallest.
#[derive(Debug, Clone)]
pub struct UcbU {
    sums: Vec<f64>,
    counts: Vec<u64>,
    /// `quantiles[m]` = χ²_{2m}(1 - 1/(2n²K²)), filled lazily.
    quantiles: Vec<f64>,
    tail: f64,
}

impl UcbU {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            sums: vec![0.0; k],
            counts: vec![0; k],
            quantiles: vec![f64::NAN; n + 1],
            tail: ucbu_tail(n, k),
        }
    }

    /// Lower confidence bound on the mean size of `ty`; 0 before any
    /// completion.
    pub fn index(&mut self, ty: usize) -> f64 {
        let m = self.counts[ty] as usize;
        if m == 0 {
            return 0.0;
        }
        if self.quantiles[m].is_nan() {
            let dof = u32::try_from(2 * m).expect("job counts fit in u32");
            self.quantiles[m] = chi2_upper_quantile(dof, self.tail).expect("tail lies in (0, 1)");
        }
        2.0 * self.sums[ty] / self.quantiles[m]
    }
}

impl Selector for UcbU {
    fn select(&mut self, view: &NonPreemptiveView<'_>) -> usize {
        let mut best: Option<(f64, usize)> = None;
        for ty in view.remaining_types() {
            let index = self.index(ty);
            if best.is_none_or(|(b, _)| index < b) {
                best = Some((index, ty));
            }
        }
        best.expect("selector is only consulted while jobs remain").1
    }

    fn observe(&mut self, ty: usize, size: f64) {
        self.sums[ty] += size;
        self.counts[ty] += 1;
    }
}
