use super::{view_accessors, EngineError, Progress};
use crate::model::{Instance, JobId, RunTrace};

/// What a processor-sharing controller may look at.
pub struct SharingView<'a> {
    progress: &'a Progress,
    now: f64,
}

view_accessors!(SharingView);

/// Chooses the set of jobs that share the processor equally. Consulted at
/// the start and again after every job completion.
pub trait SharingController {
    /// Fill `active` (passed in empty) with distinct incomplete jobs.
    fn active_jobs(&mut self, view: &SharingView<'_>, active: &mut Vec<JobId>);

    /// Called once per completion, before the next `active_jobs` call.
    fn on_completion(&mut self, _job: JobId, _view: &SharingView<'_>) {}
}

/// Exact fluid processor sharing: the `m` active jobs each progress at rate
/// `1/m` until the first of them completes. Simultaneous completions are
/// resolved one per event, lowest type index first.
pub fn run_processor_sharing(
    instance: &Instance,
    controller: &mut dyn SharingController,
) -> Result<RunTrace, EngineError> {
    let (n, k) = (instance.n(), instance.k());
    let mut progress = Progress::new(n, k);
    let mut trace = RunTrace::empty(n, k);
    let mut remaining: Vec<Vec<f64>> = instance.rows().to_vec();
    let mut done = vec![vec![false; k]; n];
    // Event number at which a job was last listed, to reject duplicates.
    let mut listed = vec![vec![usize::MAX; k]; n];
    let mut active = Vec::new();
    let mut now = 0.0;
    let mut event = 0usize;

    while !progress.all_done() {
        active.clear();
        controller.active_jobs(
            &SharingView {
                progress: &progress,
                now,
            },
            &mut active,
        );
        if active.is_empty() {
            return Err(EngineError::ContractViolation(
                "controller returned no active job while jobs remain".into(),
            ));
        }
        let mut next: Option<(f64, JobId)> = None;
        for &job in &active {
            if job.ty >= k || job.index >= n || done[job.index][job.ty] {
                return Err(EngineError::ContractViolation(format!(
                    "controller activated unknown or completed job {job:?}"
                )));
            }
            if listed[job.index][job.ty] == event {
                return Err(EngineError::ContractViolation(format!(
                    "controller listed job {job:?} twice"
                )));
            }
            listed[job.index][job.ty] = event;
            if trace.begin[job.index][job.ty].is_nan() {
                trace.begin[job.index][job.ty] = now;
            }
            let rem = remaining[job.index][job.ty];
            let better = match next {
                None => true,
                Some((best, best_job)) => rem < best || (rem == best && job < best_job),
            };
            if better {
                next = Some((rem, job));
            }
        }
        let (step, finished) = next.expect("active set is non-empty");
        now += step * active.len() as f64;
        for &job in &active {
            let rem = &mut remaining[job.index][job.ty];
            *rem = (*rem - step).max(0.0);
            trace.processed[job.index][job.ty] += step;
            progress.run_time[job.ty] += step;
        }
        remaining[finished.index][finished.ty] = 0.0;
        done[finished.index][finished.ty] = true;
        trace.end[finished.index][finished.ty] = now;
        progress.record(finished.ty, instance.size(finished));
        controller.on_completion(
            finished,
            &SharingView {
                progress: &progress,
                now,
            },
        );
        event += 1;
    }
    Ok(trace)
}
