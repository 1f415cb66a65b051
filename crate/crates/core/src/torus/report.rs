use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub values: BTreeMap<String, Value>,
}

impl Check {
    pub fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            passed: true,
            values: BTreeMap::new(),
        }
    }

    pub fn value(mut self, key: &str, v: impl Serialize) -> Self {
        self.set(key, v);
        self
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.values.insert(
            key.to_string(),
            serde_json::to_value(v).expect("serializable value"),
        );
    }

    /// Failing a condition is sticky.
    pub fn require(&mut self, ok: bool) {
        self.passed &= ok;
    }

    pub fn failed(name: &str, reason: impl ToString) -> Self {
        let mut c = Check::new(name).value("error", reason.to_string());
        c.passed = false;
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub scenario: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub verdict: bool,
    pub assumptions: Vec<String>,
}

impl VerificationReport {
    pub fn new(scenario: &str) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA,
            scenario: scenario.to_string(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            verdict: true,
            assumptions: Vec::new(),
        }
    }

    pub fn parameter(mut self, key: &str, v: impl Serialize) -> Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(v).expect("serializable value"),
        );
        self
    }

    pub fn push(&mut self, check: Check) {
        self.verdict &= check.passed;
        self.checks.push(check);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", self.scenario);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name
            );
            for (k, v) in &c.values {
                let _ = writeln!(out, "    {k}: {v}");
            }
        }
        for a in &self.assumptions {
            let _ = writeln!(out, "assumption: {a}");
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.verdict { "PASS" } else { "FAIL" }
        );
        out
    }
}
