use super::{view_accessors, EngineError, Progress};
use crate::model::{Instance, JobId, RunTrace};

/// What a slotted policy may look at.
pub struct SlotView<'a> {
    progress: &'a Progress,
    now: f64,
    delta: f64,
}

view_accessors!(SlotView);

impl SlotView<'_> {
    /// Slot length.
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotDecision {
    /// Give the current job of `ty` up to `count` consecutive slots.
    Slots { ty: usize, count: u64 },
    /// Run the current job of `ty` to completion.
    Exhaust { ty: usize },
}

/// Result of one decision epoch. An epoch ends early at the exact time the
/// job completes; `slots_used` then counts the completing slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotOutcome {
    pub ty: usize,
    pub slots_used: u64,
    pub completed: bool,
}

pub trait SlotPolicy {
    fn decide(&mut self, view: &SlotView<'_>) -> SlotDecision;

    fn observe(&mut self, outcome: SlotOutcome, view: &SlotView<'_>);
}

/// Runs a slotted policy with slot length `delta`. Completion times are
/// exact: a job finishing mid-slot ends the epoch at its completion time.
pub fn run_slotted(instance: &Instance, policy: &mut dyn SlotPolicy, delta: f64) -> Result<RunTrace, EngineError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(EngineError::Param(format!("slot length must be positive, got {delta}")));
    }
    let (n, k) = (instance.n(), instance.k());
    let mut progress = Progress::new(n, k);
    let mut trace = RunTrace::empty(n, k);
    let mut remaining: Vec<Vec<f64>> = instance.rows().to_vec();
    let mut now = 0.0;
    // Remainders within this much of a slot boundary finish in that slot.
    let slack = 1e-9 * delta;

    while !progress.all_done() {
        let decision = policy.decide(&SlotView {
            progress: &progress,
            now,
            delta,
        });
        let (ty, budget_slots) = match decision {
            SlotDecision::Slots { ty, count } => {
                if count == 0 {
                    return Err(EngineError::ContractViolation("policy requested zero slots".into()));
                }
                (ty, Some(count))
            }
            SlotDecision::Exhaust { ty } => (ty, None),
        };
        progress.check_type(ty, "slot policy")?;
        let job = JobId::new(ty, progress.completed_count(ty));
        let rem = remaining[job.index][ty];
        if trace.begin[job.index][ty].is_nan() {
            trace.begin[job.index][ty] = now;
        }
        let slots_to_finish = (((rem - slack) / delta).ceil().max(1.0)) as u64;
        let outcome = match budget_slots {
            Some(count) if count < slots_to_finish => {
                let work = count as f64 * delta;
                now += work;
                remaining[job.index][ty] = rem - work;
                trace.processed[job.index][ty] += work;
                progress.run_time[ty] += work;
                SlotOutcome {
                    ty,
                    slots_used: count,
                    completed: false,
                }
            }
            _ => {
                now += rem;
                remaining[job.index][ty] = 0.0;
                trace.processed[job.index][ty] += rem;
                progress.run_time[ty] += rem;
                trace.end[job.index][ty] = now;
                progress.record(ty, instance.size(job));
                SlotOutcome {
                    ty,
                    slots_used: slots_to_finish,
                    completed: true,
                }
            }
        };
        policy.observe(
            outcome,
            &SlotView {
                progress: &progress,
                now,
                delta,
            },
        );
    }
    Ok(trace)
}
