//! Named pass/fail checks with JSON details.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, passed: bool, detail: Value) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        if !self.passed {
            self.witness = witness;
        }
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub suite: String,
    pub parameters: Value,
    pub checks: Vec<CheckResult>,
}

impl LemmaReport {
    pub fn new(suite: &str, parameters: Value) -> Self {
        LemmaReport {
            suite: suite.to_string(),
            parameters,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
