//! Per-genus verification reports, serialized as one JSON object per line.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    /// Which statement of the construction this check certifies.
    pub anchor: String,
    pub result: Outcome,
    /// Witness on success, counterexample or error on failure.
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub family: String,
    pub genus: usize,
    pub status: Outcome,
    pub checks: Vec<Check>,
    /// Facts the checks rely on without recomputing them.
    pub assumptions: Vec<String>,
}

impl Report {
    pub fn new(family: &str, genus: usize) -> Self {
        Report {
            schema: SCHEMA,
            family: family.to_string(),
            genus,
            status: Outcome::Pass,
            checks: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Outcome::Pass
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Collects checks into a report, timing them when asked to.
pub struct Recorder {
    report: Report,
    timings: bool,
}

impl Recorder {
    pub fn new(family: &str, genus: usize, timings: bool) -> Self {
        Recorder { report: Report::new(family, genus), timings }
    }

    pub fn assume(&mut self, text: &str) {
        self.report.assumptions.push(text.to_string());
    }

    /// Runs one check. The closure returns whether the claim holds plus a
    /// witness; an error counts as a failure and becomes the witness.
    pub fn check<F>(&mut self, name: &str, claim: &str, anchor: &str, f: F)
    where
        F: FnOnce() -> Result<(bool, Value), String>,
    {
        let start = Instant::now();
        let (ok, witness) = match f() {
            Ok(r) => r,
            Err(e) => (false, serde_json::json!({ "error": e })),
        };
        let result = if ok { Outcome::Pass } else { Outcome::Fail };
        if !ok {
            self.report.status = Outcome::Fail;
        }
        self.report.checks.push(Check {
            name: name.to_string(),
            claim: claim.to_string(),
            anchor: anchor.to_string(),
            result,
            witness,
            wall_time_ms: self.timings.then(|| start.elapsed().as_millis() as u64),
        });
    }

    pub fn finish(self) -> Report {
        self.report
    }
}
