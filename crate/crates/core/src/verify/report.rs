use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::matrix::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub parameters: String,
    pub expected: String,
    pub actual: String,
}

/// A value recorded as data, with no claim attached (e.g. determinant signs).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub parameters: String,
    pub value: String,
}

/// Outcome of one identity sweep.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub statement: String,
    /// Why checking the identity on finite windows is sound.
    pub truncation: String,
    pub parameter_grid: String,
    pub checked: usize,
    pub status: Status,
    pub failures: Vec<Failure>,
    pub observations: Vec<Observation>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `summary` line plus failures, as printed by the CLI.
    pub fn summary(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        format!(
            "{status} {} ({} checked, {} failures) over {}",
            self.identity_id,
            self.checked,
            self.failures.len(),
            self.parameter_grid
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        writeln!(f, "  statement: {}", self.statement)?;
        writeln!(f, "  truncation: {}", self.truncation)?;
        for fail in &self.failures {
            writeln!(
                f,
                "  failure at {}: expected {}, got {}",
                fail.parameters, fail.expected, fail.actual
            )?;
        }
        for obs in &self.observations {
            writeln!(f, "  observed {}: {}", obs.parameters, obs.value)?;
        }
        Ok(())
    }
}

/// Result of checking one parameter point.
pub(crate) enum Outcome {
    Pass,
    /// Passed; the value is recorded as an observation.
    Observed(String),
    Fail {
        expected: String,
        actual: String,
    },
}

impl Outcome {
    pub(crate) fn expect_eq<T: PartialEq + fmt::Display>(expected: T, actual: T) -> Outcome {
        if expected == actual {
            Outcome::Pass
        } else {
            Outcome::Fail {
                expected: expected.to_string(),
                actual: actual.to_string(),
            }
        }
    }

    pub(crate) fn matrices(expected: &ExactMatrix, actual: &ExactMatrix) -> Outcome {
        match first_mismatch(expected, actual) {
            None => Outcome::Pass,
            Some((expected, actual)) => Outcome::Fail { expected, actual },
        }
    }
}

fn first_mismatch(expected: &ExactMatrix, actual: &ExactMatrix) -> Option<(String, String)> {
    if expected.rows() != actual.rows() || expected.cols() != actual.cols() {
        return Some((
            format!("{}x{} matrix", expected.rows(), expected.cols()),
            format!("{}x{} matrix", actual.rows(), actual.cols()),
        ));
    }
    for i in 0..expected.rows() {
        for j in 0..expected.cols() {
            let (e, a) = (expected.get(i, j), actual.get(i, j));
            if e != a {
                return Some((
                    format!("entry ({i},{j}) = {e}"),
                    format!("entry ({i},{j}) = {a}"),
                ));
            }
        }
    }
    None
}

/// Accumulates sweeps into a report.
pub(crate) struct ReportBuilder {
    report: VerificationReport,
    started: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(id: &str, statement: &str, truncation: &str, grid: String) -> Self {
        ReportBuilder {
            report: VerificationReport {
                identity_id: id.to_string(),
                statement: statement.to_string(),
                truncation: truncation.to_string(),
                parameter_grid: grid,
                checked: 0,
                status: Status::Pass,
                failures: Vec::new(),
                observations: Vec::new(),
                elapsed: Duration::ZERO,
            },
            started: Instant::now(),
        }
    }

    /// Checks every point (in parallel) and records results in point order.
    /// Returns the observed values, in order, for optional condensing.
    pub(crate) fn sweep<P, L, F>(
        &mut self,
        points: &[P],
        label: L,
        check: F,
    ) -> Vec<(String, String)>
    where
        P: Sync,
        L: Fn(&P) -> String + Sync,
        F: Fn(&P) -> Outcome + Sync,
    {
        let outcomes: Vec<Outcome> = points.par_iter().map(&check).collect();
        let mut observed = Vec::new();
        for (point, outcome) in points.iter().zip(outcomes) {
            self.report.checked += 1;
            match outcome {
                Outcome::Pass => {}
                Outcome::Observed(v) => observed.push((label(point), v)),
                Outcome::Fail { expected, actual } => self.report.failures.push(Failure {
                    parameters: label(point),
                    expected,
                    actual,
                }),
            }
        }
        observed
    }

    pub(crate) fn observe(&mut self, parameters: impl Into<String>, value: impl Into<String>) {
        self.report.observations.push(Observation {
            parameters: parameters.into(),
            value: value.into(),
        });
    }

    pub(crate) fn finish(mut self) -> VerificationReport {
        if !self.report.failures.is_empty() {
            self.report.status = Status::Fail;
        }
        self.report.elapsed = self.started.elapsed();
        self.report
    }
}

pub(crate) fn sign_char(negative: bool) -> char {
    if negative {
        '-'
    } else {
        '+'
    }
}
