use std::fmt;

use crate::format::sig15;

/// Outcome of one numerical check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check_name: String,
    pub samples: u64,
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerificationReport {
    /// `passed` is derived: the check passes iff `max_violation ≤ tolerance`.
    pub fn new(
        check_name: impl Into<String>,
        samples: u64,
        max_violation: f64,
        tolerance: f64,
    ) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            samples,
            max_violation,
            tolerance,
            passed: max_violation <= tolerance,
        }
    }

    /// `name,samples,max_violation,tolerance,passed`
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.check_name,
            self.samples,
            sig15(self.max_violation),
            sig15(self.tolerance),
            self.passed
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:>10} {:>24} {:>12} {}",
            self.check_name,
            self.samples,
            format!("{:.6e}", self.max_violation),
            format!("{:.1e}", self.tolerance),
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Running maximum of violations, NaN-sticky.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Worst {
    pub value: f64,
    pub count: u64,
}

impl Worst {
    pub fn push(&mut self, violation: f64) {
        self.count += 1;
        if !self.value.is_nan() && (violation.is_nan() || violation > self.value) {
            self.value = violation;
        }
    }

    pub fn merge(self, other: Worst) -> Worst {
        let mut out = self;
        out.count += other.count;
        if !out.value.is_nan() && (other.value.is_nan() || other.value > out.value) {
            out.value = other.value;
        }
        out
    }

    pub fn report(self, name: &str, tolerance: f64) -> VerificationReport {
        VerificationReport::new(name, self.count, self.value, tolerance)
    }
}
