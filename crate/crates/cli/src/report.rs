//! Machine-readable command reports.

use omegacat::report::{Status, ValidationReport, Violation};
use omegacat::Error;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

/// Everything a command prints on standard output. Keys serialize sorted.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witnesses: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            status: Status::Pass,
            violations: Vec::new(),
            counts: BTreeMap::new(),
            witnesses: Value::Null,
            error: None,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn with(mut self, witnesses: impl Serialize) -> Self {
        self.witnesses = serde_json::to_value(witnesses).expect("serializable");
        self
    }

    pub fn absorb(mut self, r: ValidationReport) -> Self {
        if !r.passed() {
            self.status = Status::Fail;
        }
        self.violations.extend(r.violations);
        for (k, v) in r.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self
    }

    pub fn fail(mut self, why: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.error = Some(why.into());
        self
    }

    /// A library error that is a failed law rather than bad input.
    pub fn from_error(command: &str, e: &Error) -> Self {
        Report::new(command).fail(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}
