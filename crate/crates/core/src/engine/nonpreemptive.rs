use super::{view_accessors, EngineError, Progress};
use crate::model::{Instance, JobId, RunTrace};

/// What a sequential policy may look at when picking the next type.
pub struct NonPreemptiveView<'a> {
    progress: &'a Progress,
    now: f64,
}

view_accessors!(NonPreemptiveView);

/// A policy that repeatedly picks a type whose next job then runs to
/// completion.
pub trait Selector {
    /// Must return a type that still has incomplete jobs.
    fn select(&mut self, view: &NonPreemptiveView<'_>) -> usize;

    /// Called after each completion with the realized size.
    fn observe(&mut self, _ty: usize, _size: f64) {}
}

/// Runs jobs one at a time, each to completion, in the order chosen by
/// `selector`. Within a type, jobs run in index order.
pub fn run_nonpreemptive(instance: &Instance, selector: &mut dyn Selector) -> Result<RunTrace, EngineError> {
    let (n, k) = (instance.n(), instance.k());
    let mut progress = Progress::new(n, k);
    let mut trace = RunTrace::empty(n, k);
    let mut now = 0.0;
    while !progress.all_done() {
        let ty = selector.select(&NonPreemptiveView {
            progress: &progress,
            now,
        });
        progress.check_type(ty, "selector")?;
        let job = JobId::new(ty, progress.completed_count(ty));
        let size = instance.size(job);
        trace.begin[job.index][ty] = now;
        now += size;
        trace.end[job.index][ty] = now;
        trace.processed[job.index][ty] = size;
        progress.run_time[ty] += size;
        progress.record(ty, size);
        selector.observe(ty, size);
    }
    Ok(trace)
}

/// Runs an explicit job order (a permutation of all jobs), each to
/// completion. Used by the clairvoyant benchmarks.
pub fn run_sequence(instance: &Instance, order: &[JobId]) -> Result<RunTrace, EngineError> {
    let (n, k) = (instance.n(), instance.k());
    if order.len() != n * k {
        return Err(EngineError::ContractViolation(format!(
            "order lists {} jobs, instance has {}",
            order.len(),
            n * k
        )));
    }
    let mut seen = vec![vec![false; k]; n];
    let mut trace = RunTrace::empty(n, k);
    let mut now = 0.0;
    for &job in order {
        if job.ty >= k || job.index >= n || seen[job.index][job.ty] {
            return Err(EngineError::ContractViolation(format!(
                "order repeats or invents job {job:?}"
            )));
        }
        seen[job.index][job.ty] = true;
        let size = instance.size(job);
        trace.begin[job.index][job.ty] = now;
        now += size;
        trace.end[job.index][job.ty] = now;
        trace.processed[job.index][job.ty] = size;
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct FixedOrder(Vec<usize>);

    impl Selector for FixedOrder {
        fn select(&mut self, _view: &NonPreemptiveView<'_>) -> usize {
            self.0.remove(0)
        }
    }

    struct Stubborn;

    impl Selector for Stubborn {
        fn select(&mut self, _view: &NonPreemptiveView<'_>) -> usize {
            0
        }
    }

    #[test]
    fn fixed_order_hand_computation() {
        let inst = Instance::from_columns(&[vec![2.0], vec![1.0]]).unwrap();
        let trace = run_nonpreemptive(&inst, &mut FixedOrder(vec![0, 1])).unwrap();
        assert_eq!(trace.end(JobId::new(0, 0)), 2.0);
        assert_eq!(trace.end(JobId::new(1, 0)), 3.0);
        assert_eq!(trace.flow_time(), 5.0);
        assert!(trace.is_consistent_with(&inst, 1e-12));
    }

    #[test]
    fn shortest_first_sequence() {
        let inst = Instance::from_columns(&[vec![3.0], vec![1.0], vec![2.0]]).unwrap();
        let order = [JobId::new(1, 0), JobId::new(2, 0), JobId::new(0, 0)];
        assert_eq!(run_sequence(&inst, &order).unwrap().flow_time(), 10.0);
    }

    #[test]
    fn selecting_exhausted_type_is_an_error() {
        let inst = Instance::from_columns(&[vec![1.0], vec![1.0]]).unwrap();
        assert!(matches!(
            run_nonpreemptive(&inst, &mut Stubborn),
            Err(EngineError::ContractViolation(_))
        ));
        assert!(matches!(
            run_nonpreemptive(&inst, &mut FixedOrder(vec![5])),
            Err(EngineError::ContractViolation(_))
        ));
    }

    #[test]
    fn sequence_must_be_a_permutation() {
        let inst = Instance::from_columns(&[vec![1.0], vec![1.0]]).unwrap();
        assert!(run_sequence(&inst, &[JobId::new(0, 0)]).is_err());
        assert!(run_sequence(&inst, &[JobId::new(0, 0), JobId::new(0, 0)]).is_err());
    }
}
