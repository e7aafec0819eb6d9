use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use matfold_core::Result;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub paper_ref: String,
    pub pass: bool,
    pub witness: Value,
}

/// A scenario report. Timings are kept apart from the checks so that the
/// rest of the report is byte-for-byte reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub scenario: String,
    pub checks: Vec<Check>,
    /// Milliseconds per check.
    pub timings: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(scenario: &str) -> Self {
        Report {
            schema: SCHEMA,
            scenario: scenario.to_string(),
            checks: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// The report without timings.
    pub fn comparable(&self) -> Value {
        json!({
            "schema": self.schema,
            "scenario": self.scenario,
            "checks": self.checks,
        })
    }

    /// Runs one check; an error counts as a failure with the message as witness.
    pub fn check(
        &mut self,
        name: &str,
        paper_ref: &str,
        f: impl FnOnce() -> Result<(bool, Value)>,
    ) -> bool {
        let start = Instant::now();
        let (pass, witness) = match f() {
            Ok(r) => r,
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        self.timings
            .insert(name.to_string(), start.elapsed().as_millis() as u64);
        self.checks.push(Check {
            name: name.to_string(),
            paper_ref: paper_ref.to_string(),
            pass,
            witness,
        });
        pass
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.timings.extend(other.timings);
    }
}

/// Serializes any witness value, mapping failures to a string.
pub fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| Value::String(e.to_string()))
}
