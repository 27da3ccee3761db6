use std::collections::BTreeMap;
use std::time::Duration;

use ordiso::verify::SuiteOutcome;
use serde::{Deserialize, Serialize};

use crate::matrix_file::MatrixFile;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub bound: Option<f64>,
    pub max: f64,
    pub evaluated: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureReport {
    pub trial: u64,
    pub check: String,
    pub message: String,
    pub witness: BTreeMap<String, MatrixFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub max_residual: f64,
    pub checks: Vec<CheckReport>,
    /// Sorted by trial index.
    pub failures: Vec<FailureReport>,
    pub notes: Vec<String>,
    pub elapsed_seconds: f64,
}

impl RunReport {
    pub fn from_outcome(out: &SuiteOutcome, elapsed: Duration) -> Self {
        let checks = out
            .checks
            .iter()
            .map(|c| CheckReport { name: c.name.clone(), bound: c.bound, max: c.max, evaluated: c.evaluated, failed: c.failed })
            .collect();
        let mut failures: Vec<FailureReport> = out
            .failures
            .iter()
            .map(|f| FailureReport {
                trial: f.trial,
                check: f.check.clone(),
                message: f.message.clone(),
                witness: f.witness.iter().map(|(k, m)| (k.clone(), MatrixFile::from_matrix(m))).collect(),
            })
            .collect();
        failures.sort_by_key(|f| f.trial);
        RunReport {
            suite: out.suite.clone(),
            seed: out.seed,
            trials: out.trials,
            passed: out.passed(),
            max_residual: out.max_residual(),
            checks,
            failures,
            notes: out.notes.clone(),
            elapsed_seconds: elapsed.as_secs_f64(),
        }
    }

    /// The report with the timing field zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        RunReport { elapsed_seconds: 0.0, ..self.clone() }
    }

    pub fn failure_count(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum::<usize>().max(self.failures.len())
    }
}
