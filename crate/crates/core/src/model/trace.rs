use std::io::{self, Write};

use super::{Instance, JobId};

/// Begin/end dates and received processing of every job in one run.
///
/// All matrices are indexed `[i][k]` like [`Instance`] sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub(crate) begin: Vec<Vec<f64>>,
    pub(crate) end: Vec<Vec<f64>>,
    pub(crate) processed: Vec<Vec<f64>>,
}

impl RunTrace {
    pub(crate) fn empty(n: usize, k: usize) -> Self {
        Self {
            begin: vec![vec![f64::NAN; k]; n],
            end: vec![vec![f64::NAN; k]; n],
            processed: vec![vec![0.0; k]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.begin.len()
    }

    pub fn k(&self) -> usize {
        self.begin.first().map_or(0, Vec::len)
    }

    pub fn begin(&self, job: JobId) -> f64 {
        self.begin[job.index][job.ty]
    }

    pub fn end(&self, job: JobId) -> f64 {
        self.end[job.index][job.ty]
    }

    pub fn processed(&self, job: JobId) -> f64 {
        self.processed[job.index][job.ty]
    }

    /// Sum of all completion times.
    pub fn flow_time(&self) -> f64 {
        self.end.iter().flatten().sum()
    }

    /// Time at which the last job completes.
    pub fn makespan(&self) -> f64 {
        self.end.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Whether each type's jobs ran one after another:
    /// `end[i][k] <= begin[i+1][k]` for all `i`.
    pub fn is_typewise_nonpreemptive(&self) -> bool {
        self.end
            .iter()
            .zip(self.begin.iter().skip(1))
            .all(|(end, next_begin)| end.iter().zip(next_begin).all(|(e, b)| e <= b))
    }

    /// Checks begin ≤ end for every job and that each job received its full
    /// size, up to `rel_tol` relative error.
    pub fn is_consistent_with(&self, instance: &Instance, rel_tol: f64) -> bool {
        if self.n() != instance.n() || self.k() != instance.k() {
            return false;
        }
        instance.rows().iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(k, &size)| {
                let (b, e, p) = (self.begin[i][k], self.end[i][k], self.processed[i][k]);
                b.is_finite() && e.is_finite() && b <= e && (p - size).abs() <= rel_tol * size
            })
        })
    }

    /// Writes `type,job_index,begin,end` rows (one-based type and job
    /// index), ordered by completion time.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "type,job_index,begin,end")?;
        let mut jobs: Vec<JobId> = (0..self.n())
            .flat_map(|i| (0..self.k()).map(move |k| JobId::new(k, i)))
            .collect();
        jobs.sort_by(|a, b| self.end(*a).total_cmp(&self.end(*b)).then(a.cmp(b)));
        for job in jobs {
            writeln!(
                out,
                "{},{},{},{}",
                job.ty + 1,
                job.index + 1,
                self.begin(job),
                self.end(job)
            )?;
        }
        Ok(())
    }
}
