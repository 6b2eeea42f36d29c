use crate::engine::{SlotDecision, SlotOutcome, SlotPolicy, SlotView};
use crate::stats::klucb_index;

/// Largest batch exponent tried when extending a run without updates.
pub const MAX_BATCH_EXPONENT: u32 = 30;

/// Optimistic preemptive policy over Δ-slots.
///
/// Each slot given to a type is a Bernoulli trial that succeeds when the
/// running job finishes within it. The type with the largest KL-UCB index
/// on its success rate runs next, for the largest power-of-two batch of
/// slots that would keep its index, counting the whole batch as failures,
/// at or above the runner-up's.
#[derive(Debug, Clone)]
pub struct UcbRr {
    bonus: f64,
    pulls: Vec<u64>,
    successes: Vec<u64>,
}

impl UcbRr {
    /// `bonus` is the numerator of the exploration budget, e.g. ln(n²K²).
    pub fn new(k: usize, bonus: f64) -> Self {
        Self {
            bonus,
            pulls: vec![0; k],
            successes: vec![0; k],
        }
    }

    pub fn index(&self, ty: usize) -> f64 {
        self.deflated_index(ty, 0)
    }

    /// Index of `ty` if it received `extra` more slots with no success.
    fn deflated_index(&self, ty: usize, extra: u64) -> f64 {
        let pulls = self.pulls[ty] + extra;
        if pulls == 0 {
            return 1.0;
        }
        klucb_index(self.successes[ty] as f64 / pulls as f64, pulls, self.bonus)
    }

    /// Exponent of the batch for `leader` against runner-up index `rival`:
    /// the last γ in a linear scan whose deflated index stays at or above
    /// `rival`, or `None` if even γ = 0 falls below it.
    fn batch_exponent(&self, leader: usize, rival: f64) -> Option<u32> {
        let mut passing = None;
        for gamma in 0..=MAX_BATCH_EXPONENT {
            if self.deflated_index(leader, 1u64 << gamma) >= rival {
                passing = Some(gamma);
            } else {
                break;
            }
        }
        passing
    }
}

impl SlotPolicy for UcbRr {
    fn decide(&mut self, view: &SlotView<'_>) -> SlotDecision {
        let indices: Vec<(usize, f64)> = view.remaining_types().map(|ty| (ty, self.index(ty))).collect();
        // Highest index wins; ties go to the lowest type.
        let &(ty, _) = indices
            .iter()
            .reduce(|best, cand| if cand.1 > best.1 { cand } else { best })
            .expect("policy is only consulted while jobs remain");
        let runner_up = indices
            .iter()
            .filter(|&&(other, _)| other != ty)
            .map(|&(_, index)| index)
            .reduce(f64::max);
        match runner_up {
            None => SlotDecision::Exhaust { ty },
            Some(rival) => {
                let count = self.batch_exponent(ty, rival).map_or(1, |gamma| 1u64 << gamma);
                SlotDecision::Slots { ty, count }
            }
        }
    }

    fn observe(&mut self, outcome: SlotOutcome, _view: &SlotView<'_>) {
        self.pulls[outcome.ty] += outcome.slots_used;
        self.successes[outcome.ty] += u64::from(outcome.completed);
    }
}
