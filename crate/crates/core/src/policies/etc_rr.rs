use super::elimination::Candidates;
use crate::engine::{SharingController, SharingView};
use crate::model::JobId;
use crate::stats::ConfidenceConstant;

/// Explore-then-commit with round robin among the candidates.
///
/// The current job of every candidate type shares the processor. Each time
/// a job finishes, its type scores a win against every other candidate, and
/// types that lose significantly more than half of these races are dropped.
/// Win counts persist when the candidate set is rebuilt.
#[derive(Debug, Clone)]
pub struct EtcRr {
    n: usize,
    /// `beta[k][l]`: completions of `k` while `l` was also a candidate.
    beta: Vec<Vec<u64>>,
    candidates: Candidates,
}

impl EtcRr {
    pub fn new(n: usize, k: usize, constant: ConfidenceConstant) -> Self {
        Self {
            n,
            beta: vec![vec![0; k]; k],
            candidates: Candidates::new(n, k, constant),
        }
    }

    pub fn candidates(&self) -> Vec<usize> {
        self.candidates.members()
    }

    /// Race wins of `winner` over `loser`.
    pub fn wins(&self, winner: usize, loser: usize) -> u64 {
        self.beta[winner][loser]
    }
}

impl SharingController for EtcRr {
    fn active_jobs(&mut self, view: &SharingView<'_>, active: &mut Vec<JobId>) {
        let unfinished: Vec<bool> = (0..view.k()).map(|ty| !view.is_exhausted(ty)).collect();
        self.candidates.rebuild_if_empty(&unfinished);
        active.extend(
            self.candidates
                .members()
                .into_iter()
                .filter_map(|ty| view.current_job(ty)),
        );
    }

    fn on_completion(&mut self, job: JobId, view: &SharingView<'_>) {
        let finished = job.ty;
        if !self.candidates.contains(finished) {
            return;
        }
        for other in self.candidates.members() {
            if other == finished {
                continue;
            }
            self.beta[finished][other] += 1;
            let total = self.beta[finished][other] + self.beta[other][finished];
            self.candidates.update(finished, other, self.beta[finished][other], total);
            self.candidates.update(other, finished, self.beta[other][finished], total);
            if self.candidates.eliminates(finished, other) {
                self.candidates.remove(other);
            }
            if self.candidates.eliminates(other, finished) {
                self.candidates.remove(finished);
            }
        }
        if view.completed_count(finished) >= self.n {
            self.candidates.remove(finished);
        }
    }
}
