//! Verification reports and their JSON / markdown renderings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A conditional statement whose hypothesis was never met within budget.
    Vacuous,
    /// Nothing fit inside the coefficient budget.
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
            Status::Skipped => "skipped",
        }
    }
}

/// One failed assertion, with enough context to recompute it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub params: String,
    pub index: u64,
    pub value: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub params_swept: Vec<String>,
    pub indices_checked: u64,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub ms: u64,
}

impl VerificationReport {
    pub fn new(id: impl Into<String>) -> Self {
        VerificationReport {
            id: id.into(),
            status: Status::Pass,
            params_swept: Vec::new(),
            indices_checked: 0,
            violations: Vec::new(),
            notes: Vec::new(),
            ms: 0,
        }
    }

    pub fn sweep(&mut self, params: impl Into<String>) {
        self.params_swept.push(params.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records one check of `value == expected`.
    pub fn check<V: ToString + PartialEq>(
        &mut self,
        params: impl FnOnce() -> String,
        index: u64,
        value: V,
        expected: V,
    ) {
        self.indices_checked += 1;
        if value != expected {
            self.violations.push(Violation {
                params: params(),
                index,
                value: value.to_string(),
                expected: expected.to_string(),
            });
        }
    }

    /// Derives the status from the counters: any violation fails, nothing
    /// checked is `skipped`. `Vacuous` set earlier is kept.
    pub fn finish(mut self, started: Instant) -> Self {
        self.ms = started.elapsed().as_millis() as u64;
        self.status = if !self.violations.is_empty() {
            Status::Fail
        } else if self.status == Status::Vacuous {
            Status::Vacuous
        } else if self.indices_checked == 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn first_violation_index(&self) -> Option<u64> {
        self.violations.first().map(|v| v.index)
    }
}

/// The aggregate document written by the suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: u32,
    pub checks: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn new(mut checks: Vec<VerificationReport>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        SuiteReport {
            version: REPORT_VERSION,
            checks,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| check | status | params | indices | violations | ms |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                c.id,
                c.status.as_str(),
                c.params_swept.len(),
                c.indices_checked,
                c.violations.len(),
                c.ms
            );
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "\n{} checks: {} pass, {} fail, {} vacuous, {} skipped",
            self.checks.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Vacuous),
            count(Status::Skipped)
        );
        out
    }
}
