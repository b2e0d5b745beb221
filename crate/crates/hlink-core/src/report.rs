//! Machine-readable pass/fail reports emitted by the verifiers and checkers.

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// An ordered list of named checks. Serializes to `{check_name: {pass, detail}}`
/// with insertion order preserved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn checks(&self) -> &[CheckResult] {
        &self.checks
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        for c in &self.checks {
            map.insert(
                c.name.clone(),
                json!({ "pass": c.pass, "detail": c.detail }),
            );
        }
        Value::Object(map)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_insertion_order() {
        let mut r = Report::new();
        r.push("zeta", true, "ok");
        r.push("alpha", false, "bad");
        assert!(!r.all_pass());
        let text = r.to_json();
        assert!(text.find("zeta").unwrap() < text.find("alpha").unwrap());
        assert_eq!(r.get("alpha").map(|c| c.pass), Some(false));
    }
}
