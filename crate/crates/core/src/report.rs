//! Machine-readable verification reports.
//!
//! A report is a list of named checks, each `pass`, `fail` or `skipped`, with
//! the expected and observed values as JSON. Output is deterministic: the
//! only time-dependent field, `elapsed_ms`, is filled in only on request.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: String,
}

fn to_value<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

impl Check {
    /// Pass iff `expected == actual`.
    pub fn compare<T: Serialize + PartialEq>(
        name: &str,
        expected: T,
        actual: T,
        details: impl Into<String>,
    ) -> Check {
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Check::with_status(name, status, expected, actual, details)
    }

    pub fn with_status<E: Serialize, A: Serialize>(
        name: &str,
        status: Status,
        expected: E,
        actual: A,
        details: impl Into<String>,
    ) -> Check {
        Check {
            name: name.to_string(),
            status,
            expected: to_value(expected),
            actual: to_value(actual),
            witness: None,
            details: details.into(),
        }
    }

    pub fn skipped<E: Serialize>(name: &str, expected: E, reason: impl Into<String>) -> Check {
        Check::with_status(name, Status::Skipped, expected, Value::Null, reason)
    }

    pub fn witness<W: Serialize>(mut self, w: W) -> Check {
        self.witness = Some(to_value(w));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 0 when nothing failed (and, under `strict`, nothing was skipped); 1 otherwise.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let bad = self.count(Status::Fail) > 0 || (strict && self.count(Status::Skipped) > 0);
        i32::from(bad)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}: {}\n", self.tool, self.version, self.command);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!(
                "[{status}] {}: expected {}, actual {}",
                c.name, c.expected, c.actual
            ));
            if !c.details.is_empty() {
                out.push_str(&format!(" ({})", c.details));
            }
            out.push('\n');
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_and_exit_codes() {
        let mut r = Report::new("test");
        r.push(Check::compare("a", 2, 2, ""));
        assert_eq!(r.exit_code(false), 0);
        r.push(Check::skipped("b", 1, "too large"));
        assert_eq!(r.exit_code(false), 0);
        assert_eq!(r.exit_code(true), 1);
        r.push(Check::compare("c", 1, 2, "").witness("x"));
        assert_eq!(r.exit_code(false), 1);
        let json = r.to_json();
        assert!(json.contains("\"status\": \"skipped\""));
        assert!(json.contains("\"elapsed_ms\": null"));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(r.to_text().contains("1 passed, 1 failed, 1 skipped"));
    }
}
