//! Pass/fail records produced by the identity verifiers.

use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of one checked identity instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub identity: String,
    pub inputs: String,
    /// Size of the residual; exactly `0.0` for exact identities that hold.
    pub residual: f64,
    pub passed: bool,
}

impl Check {
    pub fn exact(identity: impl Into<String>, inputs: impl Into<String>, holds: bool) -> Self {
        Check { identity: identity.into(), inputs: inputs.into(), residual: if holds { 0.0 } else { 1.0 }, passed: holds }
    }

    pub fn numeric(identity: impl Into<String>, inputs: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check { identity: identity.into(), inputs: inputs.into(), residual, passed: residual.is_finite() && residual <= tol }
    }
}

/// A batch of checks for one identity family.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}
