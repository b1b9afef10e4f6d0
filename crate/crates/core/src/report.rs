//! Law-check reports shared by every validator in the crate.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub cells: Vec<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Outcome of a law check: `status` is `pass` iff there are no violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub status: Status,
    pub violations: Vec<Violation>,
    /// Number of instances enumerated per law.
    pub counts: BTreeMap<String, usize>,
}

impl Default for ValidationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport { status: Status::Pass, violations: Vec::new(), counts: BTreeMap::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Count one instance of `law`; record a violation when `ok` is false.
    pub fn check(&mut self, law: &str, ok: bool, cells: &[&str]) -> bool {
        self.tally(law);
        if !ok {
            self.violate(law, cells, String::new());
        }
        ok
    }

    pub fn tally(&mut self, law: &str) {
        *self.counts.entry(law.to_string()).or_insert(0) += 1;
    }

    pub fn violate(&mut self, law: &str, cells: &[&str], detail: impl Into<String>) {
        self.status = Status::Fail;
        self.violations.push(Violation {
            law: law.to_string(),
            cells: cells.iter().map(|s| s.to_string()).collect(),
            detail: detail.into(),
        });
    }

    /// Fold `other` into `self`, prefixing its law names.
    pub fn merge(&mut self, prefix: &str, other: ValidationReport) {
        let name = |l: &str| if prefix.is_empty() { l.to_string() } else { format!("{prefix}/{l}") };
        for (law, n) in other.counts {
            *self.counts.entry(name(&law)).or_insert(0) += n;
        }
        for v in other.violations {
            self.status = Status::Fail;
            self.violations.push(Violation { law: name(&v.law), ..v });
        }
    }

    pub fn violated_laws(&self) -> Vec<&str> {
        let mut laws: Vec<&str> = self.violations.iter().map(|v| v.law.as_str()).collect();
        laws.sort_unstable();
        laws.dedup();
        laws
    }

    pub fn has_violation(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}
