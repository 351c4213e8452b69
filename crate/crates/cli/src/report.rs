use std::fmt;
use std::io::Write;

use serde::Serialize;
use symxform_core::C64;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Value {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Value {
    fn from(z: C64) -> Self {
        Value { re: z.re, im: z.im }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value { re: x, im: 0.0 }
    }
}

impl From<Value> for C64 {
    fn from(v: Value) -> Self {
        C64::new(v.re, v.im)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{:.6e}", self.re)
        } else {
            write!(f, "{:.6e}{:+.6e}i", self.re, self.im)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tolerance {
    Absolute,
    Relative,
}

/// One comparison: passes iff `|expected − observed| ≤ tolerance`, or
/// `≤ tolerance·|expected|` for relative checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub deviation: f64,
    pub tolerance: f64,
    pub mode: Tolerance,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Into<Value>, observed: impl Into<Value>, tolerance: f64, mode: Tolerance) -> Self {
        let expected = expected.into();
        let observed = observed.into();
        let diff = (C64::from(expected) - C64::from(observed)).norm();
        let deviation = match mode {
            Tolerance::Absolute => diff,
            Tolerance::Relative => diff / C64::from(expected).norm(),
        };
        Check {
            name: name.into(),
            expected,
            observed,
            deviation,
            tolerance,
            mode,
            pass: deviation <= tolerance,
        }
    }

    pub fn absolute(name: impl Into<String>, expected: impl Into<Value>, observed: impl Into<Value>, tolerance: f64) -> Self {
        Self::new(name, expected, observed, tolerance, Tolerance::Absolute)
    }

    pub fn relative(name: impl Into<String>, expected: impl Into<Value>, observed: impl Into<Value>, tolerance: f64) -> Self {
        Self::new(name, expected, observed, tolerance, Tolerance::Relative)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub total: usize,
    pub failures: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        let failures = checks.iter().filter(|c| !c.pass).count();
        Report {
            suite: suite.into(),
            passed: failures == 0,
            total: checks.len(),
            failures,
            checks,
        }
    }

    pub fn write<W: Write>(&self, out: &mut W, json: bool) -> Result<(), CliError> {
        if json {
            serde_json::to_writer_pretty(&mut *out, self).map_err(|e| CliError::Format(e.to_string()))?;
            writeln!(out)?;
            return Ok(());
        }
        for c in &self.checks {
            let mode = match c.mode {
                Tolerance::Absolute => "abs",
                Tolerance::Relative => "rel",
            };
            writeln!(
                out,
                "{} {}: expected {} observed {} ({mode} dev {:.2e}, tol {:.0e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.observed,
                c.deviation,
                c.tolerance,
            )?;
        }
        writeln!(out, "{}: {}/{} checks pass", self.suite, self.total - self.failures, self.total)?;
        Ok(())
    }
}
