use crate::engine::{NonPreemptiveView, Selector};

/// Greedy non-preemptive policy: runs the unfinished type with the lowest
/// empirical mean of completed sizes. Untried types count as 0, so every
/// type is tried once before any repeats.
#[derive(Debug, Clone)]
pub struct Lsept {
    sums: Vec<f64>,
    counts: Vec<u64>,
}

impl Lsept {
    pub fn new(k: usize) -> Self {
        Self {
            sums: vec![0.0; k],
            counts: vec![0; k],
        }
    }

    pub fn estimate(&self, ty: usize) -> f64 {
        if self.counts[ty] == 0 {
            0.0
        } else {
            self.sums[ty] / self.counts[ty] as f64
        }
    }
}

impl Selector for Lsept {
    fn select(&mut self, view: &NonPreemptiveView<'_>) -> usize {
        let mut best: Option<(f64, usize)> = None;
        for ty in view.remaining_types() {
            let estimate = self.estimate(ty);
            if best.is_none_or(|(b, _)| estimate < b) {
                best = Some((estimate, ty));
            }
        }
        best.expect("selector is only consulted while jobs remain").1
    }

    fn observe(&mut self, ty: usize, size: f64) {
        self.sums[ty] += size;
        self.counts[ty] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_nonpreemptive;
    use crate::model::{Instance, JobId};

    #[test]
    fn tries_each_type_then_exploits() {
        let inst = Instance::from_columns(&[vec![0.5, 0.5, 0.5], vec![2.0, 2.0, 2.0]]).unwrap();
        let trace = run_nonpreemptive(&inst, &mut Lsept::new(2)).unwrap();
        // Order: type 0, type 1, then the rest of type 0, then type 1.
        assert_eq!(trace.begin(JobId::new(1, 0)), 0.5);
        assert_eq!(trace.begin(JobId::new(0, 1)), 2.5);
        assert_eq!(trace.begin(JobId::new(1, 1)), 3.5);
    }
}
