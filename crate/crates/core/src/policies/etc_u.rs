use super::elimination::Candidates;
use crate::engine::{NonPreemptiveView, Selector};
use crate::stats::ConfidenceConstant;

/// Explore-then-commit, non-preemptive.
///
/// Runs the candidate with the fewest completed jobs. The i-th completed
/// jobs of two types are compared head to head; a type is dropped from the
/// candidates once another type beats it significantly more than half the
/// time.
#[derive(Debug, Clone)]
pub struct EtcU {
    n: usize,
    sizes: Vec<Vec<f64>>,
    /// `wins[k][l]`: ranks `i < min(m_k, m_l)` with `P_i^k < P_i^l`.
    wins: Vec<Vec<u64>>,
    candidates: Candidates,
}

impl EtcU {
    pub fn new(n: usize, k: usize, constant: ConfidenceConstant) -> Self {
        Self {
            n,
            sizes: vec![Vec::with_capacity(n); k],
            wins: vec![vec![0; k]; k],
            candidates: Candidates::new(n, k, constant),
        }
    }

    fn unfinished(&self) -> Vec<bool> {
        self.sizes.iter().map(|s| s.len() < self.n).collect()
    }

    /// Current candidate types.
    pub fn candidates(&self) -> Vec<usize> {
        self.candidates.members()
    }
}

impl Selector for EtcU {
    fn select(&mut self, _view: &NonPreemptiveView<'_>) -> usize {
        let unfinished = self.unfinished();
        self.candidates.rebuild_if_empty(&unfinished);
        self.candidates
            .members()
            .into_iter()
            .min_by_key(|&ty| (self.sizes[ty].len(), ty))
            .expect("candidate set is rebuilt before selection")
    }

    fn observe(&mut self, ty: usize, size: f64) {
        let rank = self.sizes[ty].len();
        self.sizes[ty].push(size);
        for other in 0..self.sizes.len() {
            if other == ty {
                continue;
            }
            if let Some(&theirs) = self.sizes[other].get(rank) {
                if size < theirs {
                    self.wins[ty][other] += 1;
                } else if theirs < size {
                    self.wins[other][ty] += 1;
                }
            }
        }

        let members = self.candidates.members();
        for &a in &members {
            for &b in &members {
                if a != b {
                    let total = self.sizes[a].len().min(self.sizes[b].len()) as u64;
                    self.candidates.update(a, b, self.wins[a][b], total);
                }
            }
        }
        for &loser in &members {
            if members.iter().any(|&w| w != loser && self.candidates.eliminates(w, loser)) {
                self.candidates.remove(loser);
            }
        }
        if self.sizes[ty].len() == self.n {
            self.candidates.remove(ty);
        }
    }
}
