//! Candidate-set bookkeeping shared by the two explore-then-commit
//! policies.

use crate::stats::{hoeffding_radius_with, ConfidenceConstant};

/// Pairwise statistics and the candidate set 𝒜.
///
/// `score[k][l]` holds the last `r̂_{k,l} - δ_{k,l}` computed while both
/// types were candidates; a positive excess over one half means `k`
/// eliminates `l`.
#[derive(Debug, Clone)]
pub(crate) struct Candidates {
    n: usize,
    k: usize,
    constant: ConfidenceConstant,
    members: Vec<bool>,
    score: Vec<Vec<f64>>,
}

impl Candidates {
    pub(crate) fn new(n: usize, k: usize, constant: ConfidenceConstant) -> Self {
        Self {
            n,
            k,
            constant,
            members: vec![false; k],
            score: vec![vec![f64::NEG_INFINITY; k]; k],
        }
    }

    pub(crate) fn contains(&self, ty: usize) -> bool {
        self.members[ty]
    }

    pub(crate) fn members(&self) -> Vec<usize> {
        (0..self.k).filter(|&ty| self.members[ty]).collect()
    }

    pub(crate) fn remove(&mut self, ty: usize) {
        self.members[ty] = false;
    }

    /// Stores `r̂ - δ` for the ordered pair from `wins` out of `total`
    /// comparisons.
    pub(crate) fn update(&mut self, winner: usize, loser: usize, wins: u64, total: u64) {
        self.score[winner][loser] = if total == 0 {
            f64::NEG_INFINITY
        } else {
            wins as f64 / total as f64 - hoeffding_radius_with(total, self.n, self.k, self.constant)
        };
    }

    pub(crate) fn eliminates(&self, winner: usize, loser: usize) -> bool {
        self.score[winner][loser] > 0.5
    }

    /// Refills an empty candidate set from the unfinished types that no
    /// other unfinished type eliminates, according to the stored scores.
    /// Falls back to every unfinished type if that leaves nothing.
    pub(crate) fn rebuild_if_empty(&mut self, unfinished: &[bool]) {
        if self.members.iter().any(|&m| m) {
            return;
        }
        for ty in 0..self.k {
            self.members[ty] = unfinished[ty]
                && (0..self.k).all(|other| other == ty || !unfinished[other] || !self.eliminates(other, ty));
        }
        if !self.members.iter().any(|&m| m) {
            self.members.copy_from_slice(unfinished);
        }
    }
}
