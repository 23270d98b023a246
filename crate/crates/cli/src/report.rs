//! Verification reports: per-check results with exact decimal-string values,
//! serializable to JSON and printable for humans.
//!
//! Every numeric field in the JSON form is a decimal string so that
//! arbitrary-precision values survive any consumer.

use std::fmt::Display;
use std::io::{self, Write};
use std::time::Duration;

use serde_json::{json, Value};

/// One verified equality (or assertion) with its parameters.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// An informational entry that does not count towards pass/fail.
#[derive(Debug, Clone)]
pub struct Note {
    pub name: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub notes: Vec<Note>,
    pub wall_time: Duration,
}

impl VerifyReport {
    pub fn new(suite: &str) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            checks: Vec::new(),
            notes: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    /// Records an equality check between two displayable values.
    pub fn record<T: PartialEq + Display>(
        &mut self,
        name: &str,
        params: String,
        expected: &T,
        actual: &T,
    ) {
        self.checks.push(Check {
            name: name.to_string(),
            params,
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass: expected == actual,
        });
    }

    /// Records a named condition that must hold.
    pub fn require(&mut self, name: &str, params: String, holds: bool, actual: String) {
        self.checks.push(Check {
            name: name.to_string(),
            params,
            expected: "holds".to_string(),
            actual,
            pass: holds,
        });
    }

    pub fn note(&mut self, name: &str, detail: String) {
        self.notes.push(Note {
            name: name.to_string(),
            detail,
        });
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|check| check.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn is_success(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed().to_string(),
            "failed": self.failed().to_string(),
            "wall_time_ms": self.wall_time.as_millis().to_string(),
            "checks": self.checks.iter().map(|check| json!({
                "name": check.name,
                "params": check.params,
                "expected": check.expected,
                "actual": check.actual,
                "pass": check.pass,
            })).collect::<Vec<_>>(),
            "notes": self.notes.iter().map(|note| json!({
                "name": note.name,
                "detail": note.detail,
            })).collect::<Vec<_>>(),
        })
    }

    /// One summary line, then up to `max_failures` counterexamples and all
    /// notes.
    pub fn write_human(&self, out: &mut dyn Write, max_failures: usize) -> io::Result<()> {
        writeln!(
            out,
            "suite {}: {} checks, {} passed, {} failed ({:.2?})",
            self.suite,
            self.checks.len(),
            self.passed(),
            self.failed(),
            self.wall_time,
        )?;
        for check in self
            .checks
            .iter()
            .filter(|check| !check.pass)
            .take(max_failures)
        {
            writeln!(
                out,
                "  FAIL {} [{}]: expected {}, got {}",
                check.name, check.params, check.expected, check.actual
            )?;
        }
        let failures = self.failed();
        if failures > max_failures {
            writeln!(out, "  ... {} more failures", failures - max_failures)?;
        }
        for note in &self.notes {
            writeln!(out, "  note {}: {}", note.name, note.detail)?;
        }
        Ok(())
    }
}
