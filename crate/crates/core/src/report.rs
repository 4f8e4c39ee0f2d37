//! Report types shared by the verifiers and the command-line front end.

use serde::Serialize;

/// Maximum number of witnesses kept in any report.
pub const MAX_WITNESSES: usize = 10;

/// Outcome of an exhaustive or sampled property scan.
///
/// `violations` holds at most [`MAX_WITNESSES`] offending items in scan order;
/// `violation_count` is the full count. The report passed iff the count is zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub arity: usize,
    pub tuples_checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Vec<String>>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, arity: usize) -> Self {
        VerificationReport {
            subject: subject.into(),
            arity,
            tuples_checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            wall_time_ms: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<String>) {
        self.tuples_checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_WITNESSES {
                self.violations.push(witness());
            }
        }
    }

    /// Appends another partial scan; the merge is associative and keeps the
    /// first witnesses in partition order.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.tuples_checked += other.tuples_checked;
        self.violation_count += other.violation_count;
        let room = MAX_WITNESSES.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
        self
    }
}

/// Milliseconds since `start`.
pub(crate) fn elapsed_ms(start: std::time::Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// One named pass/fail check in a command's report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub counts: std::collections::BTreeMap<String, u64>,
    /// At most [`MAX_WITNESSES`] offending items.
    pub witnesses: Vec<String>,
    /// Values that are neither counts nor witnesses (estimates, tables, …).
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            counts: Default::default(),
            witnesses: Vec::new(),
            details: serde_json::Value::Null,
        }
    }

    pub fn count(mut self, key: &str, v: u64) -> Self {
        self.counts.insert(key.to_string(), v);
        self
    }

    pub fn add_count(&mut self, key: &str, v: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += v;
    }

    /// Records a failure when `ok` is false.
    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.pass = false;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = details;
        self
    }

    /// Folds a scan report in under `label`.
    pub fn absorb(&mut self, label: &str, report: &VerificationReport) {
        self.add_count(&format!("{label}.tuples"), report.tuples_checked);
        self.add_count(&format!("{label}.violations"), report.violation_count);
        for w in &report.violations {
            self.require(false, || format!("{label}: ({})", w.join(", ")));
        }
    }
}
