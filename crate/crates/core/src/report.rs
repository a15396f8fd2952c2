//! Verdict records shared by the hyperhomology checks and the theorem bench.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A cutoff or a missing hypothesis prevented a decision.
    Inconclusive,
    /// Bounded evidence for a claim that cannot be decided at finite cutoff.
    Evidence,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Evidence => "evidence",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    /// Numeric tables backing the verdict; a failure names the violated joint or inequality.
    pub witnesses: Map<String, Value>,
    pub notes: Vec<String>,
    /// Wall time in milliseconds; the only field allowed to differ between runs.
    pub runtime_ms: u64,
}

impl CheckReport {
    pub fn new(check: &str, instance: &str) -> Self {
        CheckReport {
            check: check.into(),
            instance: instance.into(),
            verdict: Verdict::Pass,
            witnesses: Map::new(),
            notes: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn witness(&mut self, key: &str, v: impl Serialize) {
        self.witnesses
            .insert(key.into(), serde_json::to_value(v).expect("witness serializes"));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Record a failure; the first failure's witness is kept.
    pub fn fail(&mut self, key: &str, v: impl Serialize) {
        self.verdict = Verdict::Fail;
        if !self.witnesses.contains_key("violation") {
            self.witness("violation", serde_json::json!({ "at": key, "detail": serde_json::to_value(v).unwrap() }));
        }
    }

    /// Lower to inconclusive unless already failed.
    pub fn inconclusive(&mut self, why: impl Into<String>) {
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Inconclusive;
        }
        self.note(why);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The report with the runtime zeroed, for run-to-run comparison.
    pub fn without_timing(&self) -> Self {
        CheckReport {
            runtime_ms: 0,
            ..self.clone()
        }
    }
}
