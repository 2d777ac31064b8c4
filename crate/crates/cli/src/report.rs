use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Identifier written into every run document; bump on incompatible changes.
pub const SCHEMA_ID: &str = "ver4-report/1";

/// The JSON schema that run documents satisfy.
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    NotACover,
    OutOfRange,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::NotACover => "not-a-cover",
            Status::OutOfRange => "out-of-range",
        }
    }

    /// Statuses that make the process exit with 1.
    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Fail | Status::NotACover)
    }
}

/// Elements written in the names of `algebra`, so they re-parse as expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub algebra: String,
    pub elements: Vec<String>,
}

impl Witness {
    pub fn new(label: impl Into<String>, algebra: impl Into<String>, elements: Vec<String>) -> Self {
        Witness { label: label.into(), algebra: algebra.into(), elements }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub subject: String,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Report {
    pub fn new(check: &str, subject: &str, status: Status) -> Self {
        Report {
            check: check.into(),
            subject: subject.into(),
            status,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            message: None,
        }
    }

    pub fn count(mut self, key: &str, value: usize) -> Self {
        self.counts.insert(key.into(), value as u64);
        self
    }

    pub fn witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn message(mut self, m: impl Into<String>) -> Self {
        self.message = Some(m.into());
        self
    }

    /// Pass when `ok`, otherwise fail carrying `witness`.
    pub fn verdict(mut self, ok: bool, witness: impl FnOnce() -> Witness) -> Self {
        if ok {
            self.status = Status::Pass;
        } else {
            self.status = Status::Fail;
            self.witnesses.push(witness());
        }
        self
    }

    /// Whether the report respects the witness rule.
    pub fn is_well_formed(&self) -> bool {
        !(self.status == Status::Fail || self.status == Status::NotACover) || !self.witnesses.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub check: String,
    pub subject: String,
    pub millis: u64,
}

/// Everything one invocation produces. `timing` is the only
/// non-deterministic part and is kept apart from `reports`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunDocument {
    pub schema: String,
    pub seed: u64,
    pub reports: Vec<Report>,
    pub timing: Vec<Timing>,
}

impl RunDocument {
    pub fn new(seed: u64, timed: Vec<(Report, u64)>) -> Self {
        let timing = timed
            .iter()
            .map(|(r, ms)| Timing { check: r.check.clone(), subject: r.subject.clone(), millis: *ms })
            .collect();
        RunDocument { schema: SCHEMA_ID.into(), seed, reports: timed.into_iter().map(|(r, _)| r).collect(), timing }
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.status.is_failure()) {
            1
        } else {
            0
        }
    }

    /// The reproducible part: the document without timings.
    pub fn payload_json(&self) -> String {
        let mut doc = self.clone();
        doc.timing.clear();
        serde_json::to_string_pretty(&doc).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("{:<13} {:<12} {:<24} {}", r.status.as_str(), r.check, r.subject, counts.join(" ")));
            if let Some(m) = &r.message {
                out.push_str(&format!("  ({m})"));
            }
            out.push('\n');
            for w in &r.witnesses {
                out.push_str(&format!("    {} in {}: {}\n", w.label, w.algebra, w.elements.join(", ")));
            }
        }
        out
    }
}
