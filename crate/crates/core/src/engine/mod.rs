//! Exact virtual-time execution of policies against a fixed [`Instance`].
//!
//! Three run modes are provided: sequential (one job at a time, run to
//! completion), fluid processor sharing, and Δ-slotted execution. Policies
//! only ever see completed-job information through the view types; the
//! unrealized remainder of a running job stays inside the engine.

mod nonpreemptive;
mod sharing;
mod slotted;

pub use nonpreemptive::{run_nonpreemptive, run_sequence, NonPreemptiveView, Selector};
pub use sharing::{run_processor_sharing, SharingController, SharingView};
pub use slotted::{run_slotted, SlotDecision, SlotOutcome, SlotPolicy, SlotView};

use thiserror::Error;

use crate::model::{JobId, RunTrace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("policy contract violation: {0}")]
    ContractViolation(String),
    #[error("invalid engine parameter: {0}")]
    Param(String),
}

/// Completed-job bookkeeping shared by all run modes.
#[derive(Debug, Clone)]
pub(crate) struct Progress {
    n: usize,
    /// Sizes of completed jobs per type, in completion order.
    completed: Vec<Vec<f64>>,
    /// Processor time received per type so far, completed or not.
    run_time: Vec<f64>,
    remaining_types: usize,
}

impl Progress {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            completed: vec![Vec::with_capacity(n); k],
            run_time: vec![0.0; k],
            remaining_types: k,
        }
    }

    fn k(&self) -> usize {
        self.completed.len()
    }

    fn completed_count(&self, ty: usize) -> usize {
        self.completed[ty].len()
    }

    fn is_exhausted(&self, ty: usize) -> bool {
        self.completed[ty].len() >= self.n
    }

    fn record(&mut self, ty: usize, size: f64) {
        self.completed[ty].push(size);
        if self.completed[ty].len() == self.n {
            self.remaining_types -= 1;
        }
    }

    fn all_done(&self) -> bool {
        self.remaining_types == 0
    }

    fn check_type(&self, ty: usize, who: &str) -> Result<(), EngineError> {
        if ty >= self.k() {
            return Err(EngineError::ContractViolation(format!(
                "{who} returned type {ty} but there are only {} types",
                self.k()
            )));
        }
        if self.is_exhausted(ty) {
            return Err(EngineError::ContractViolation(format!(
                "{who} returned type {ty}, whose jobs are all complete"
            )));
        }
        Ok(())
    }
}

macro_rules! view_accessors {
    ($view:ident) => {
        impl $view<'_> {
            /// Jobs per type.
            pub fn n(&self) -> usize {
                self.progress.n
            }

            pub fn k(&self) -> usize {
                self.progress.k()
            }

            pub fn now(&self) -> f64 {
                self.now
            }

            pub fn completed_count(&self, ty: usize) -> usize {
                self.progress.completed_count(ty)
            }

            /// Sizes of the completed jobs of `ty`, in completion order.
            pub fn completed_sizes(&self, ty: usize) -> &[f64] {
                &self.progress.completed[ty]
            }

            pub fn is_exhausted(&self, ty: usize) -> bool {
                self.progress.is_exhausted(ty)
            }

            /// Types that still have incomplete jobs, in index order.
            pub fn remaining_types(&self) -> impl Iterator<Item = usize> + '_ {
                (0..self.k()).filter(move |&ty| !self.is_exhausted(ty))
            }

            /// Total processor time received by `ty` so far.
            pub fn run_time(&self, ty: usize) -> f64 {
                self.progress.run_time[ty]
            }

            /// The job of `ty` that runs next (jobs within a type run in
            /// index order), or `None` once the type is exhausted.
            pub fn current_job(&self, ty: usize) -> Option<JobId> {
                let i = self.completed_count(ty);
                (i < self.n()).then(|| JobId::new(ty, i))
            }
        }
    };
}
pub(crate) use view_accessors;

/// For each ordered type pair `(k, l)`, the number of job pairs `(j, i)`
/// with `end[j][k] <= begin[i][l]`, i.e. job `j` of type `k` was completed
/// before job `i` of type `l` started. The diagonal is left at zero.
pub fn inversion_counts(trace: &RunTrace) -> Vec<Vec<u64>> {
    let (n, k) = (trace.n(), trace.k());
    let sorted_begins: Vec<Vec<f64>> = (0..k)
        .map(|l| {
            let mut b: Vec<f64> = (0..n).map(|i| trace.begin(JobId::new(l, i))).collect();
            b.sort_by(f64::total_cmp);
            b
        })
        .collect();
    let mut counts = vec![vec![0u64; k]; k];
    for (ty, row) in counts.iter_mut().enumerate() {
        for (other, begins) in sorted_begins.iter().enumerate() {
            if other == ty {
                continue;
            }
            row[other] = (0..n)
                .map(|j| {
                    let end = trace.end(JobId::new(ty, j));
                    (n - begins.partition_point(|&b| b < end)) as u64
                })
                .sum();
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Instance;

    #[test]
    fn inversion_counts_of_sequential_orders() {
        let inst = Instance::from_columns(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let order: Vec<JobId> = (0..3)
            .map(|i| JobId::new(1, i))
            .chain((0..3).map(|i| JobId::new(0, i)))
            .collect();
        let trace = run_sequence(&inst, &order).unwrap();
        let counts = inversion_counts(&trace);
        assert_eq!(counts, vec![vec![0, 0], vec![9, 0]]);
    }

    #[test]
    fn interleaved_counts() {
        let inst = Instance::from_columns(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let order = [JobId::new(0, 0), JobId::new(1, 0), JobId::new(0, 1), JobId::new(1, 1)];
        let trace = run_sequence(&inst, &order).unwrap();
        // Type 0 job 0 ends before both type-1 jobs; type 0 job 1 before
        // type-1 job 1. Type 1 job 0 ends before type-0 job 1 begins.
        assert_eq!(inversion_counts(&trace), vec![vec![0, 3], vec![1, 0]]);
    }
}
