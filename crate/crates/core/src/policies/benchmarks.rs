//! Policies that are not learning: the realization-aware optimum, the
//! known-means type order and round robin.

use crate::engine::{NonPreemptiveView, Selector, SharingController, SharingView};
use crate::model::{Instance, JobId, TypeParams};

/// Global shortest-first order of all realized sizes, ties by
/// `(type, job index)`.
pub fn opt_order(instance: &Instance) -> Vec<JobId> {
    let mut jobs: Vec<JobId> = (0..instance.n())
        .flat_map(|i| (0..instance.k()).map(move |k| JobId::new(k, i)))
        .collect();
    jobs.sort_by(|a, b| instance.size(*a).total_cmp(&instance.size(*b)).then(a.cmp(b)));
    jobs
}

/// Runs every job of the type with the smallest mean, then the next one,
/// and so on. Ties between equal means go to the lower type index.
pub struct Ftpp {
    order: Vec<usize>,
}

impl Ftpp {
    pub fn new(params: &TypeParams) -> Self {
        Self {
            order: params.types_by_mean(),
        }
    }
}

impl Selector for Ftpp {
    fn select(&mut self, view: &NonPreemptiveView<'_>) -> usize {
        self.order
            .iter()
            .copied()
            .find(|&ty| !view.is_exhausted(ty))
            .expect("selector is only consulted while jobs remain")
    }
}

/// Per-job round robin at the fluid limit: every unfinished job receives an
/// equal share of the processor.
#[derive(Debug, Default)]
pub struct RoundRobin {
    unfinished: Option<Vec<JobId>>,
}

impl RoundRobin {
    pub fn new() -> Self {
        Self::default()
    }
}

impl SharingController for RoundRobin {
    fn active_jobs(&mut self, view: &SharingView<'_>, active: &mut Vec<JobId>) {
        let unfinished = self.unfinished.get_or_insert_with(|| {
            (0..view.k())
                .flat_map(|k| (0..view.n()).map(move |i| JobId::new(k, i)))
                .collect()
        });
        active.extend_from_slice(unfinished);
    }

    fn on_completion(&mut self, job: JobId, _view: &SharingView<'_>) {
        if let Some(unfinished) = &mut self.unfinished {
            unfinished.retain(|&j| j != job);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_nonpreemptive, run_processor_sharing, run_sequence};

    #[test]
    fn opt_puts_shorter_job_first() {
        let inst = Instance::from_columns(&[vec![3.0], vec![1.0]]).unwrap();
        assert_eq!(opt_order(&inst), vec![JobId::new(1, 0), JobId::new(0, 0)]);
    }

    #[test]
    fn opt_breaks_ties_by_index() {
        let inst = Instance::from_columns(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(
            opt_order(&inst),
            vec![JobId::new(0, 0), JobId::new(0, 1), JobId::new(1, 0), JobId::new(1, 1)]
        );
    }

    #[test]
    fn ftpp_runs_smaller_mean_first() {
        let params = TypeParams::new(vec![2.0, 1.0], 2).unwrap();
        let inst = Instance::from_sizes(params.clone(), 0, vec![vec![1.0, 5.0], vec![2.0, 6.0]]).unwrap();
        let trace = run_nonpreemptive(&inst, &mut Ftpp::new(&params)).unwrap();
        let expected = run_sequence(
            &inst,
            &[JobId::new(1, 0), JobId::new(1, 1), JobId::new(0, 0), JobId::new(0, 1)],
        )
        .unwrap();
        assert_eq!(trace, expected);
    }

    #[test]
    fn round_robin_single_type() {
        let inst = Instance::from_columns(&[vec![1.0, 2.0]]).unwrap();
        let trace = run_processor_sharing(&inst, &mut RoundRobin::new()).unwrap();
        assert_eq!(trace.end(JobId::new(0, 0)), 2.0);
        assert_eq!(trace.end(JobId::new(0, 1)), 3.0);
        assert_eq!(trace.flow_time(), 5.0);
    }

    #[test]
    fn round_robin_single_job() {
        let inst = Instance::from_columns(&[vec![1.7]]).unwrap();
        let trace = run_processor_sharing(&inst, &mut RoundRobin::new()).unwrap();
        assert_eq!(trace.flow_time(), 1.7);
    }
}
