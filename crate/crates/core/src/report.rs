//! Violation reports shared by every checker.

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Witnesses beyond this many are counted but not stored.
pub const MAX_STORED_VIOLATIONS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub law: String,
    pub message: String,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub bound: Value,
    pub checked: u64,
    pub skipped: u64,
    pub failed: u64,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            bound: Value::Null,
            checked: 0,
            skipped: 0,
            failed: 0,
            violations: Vec::new(),
        }
    }

    pub fn with_bound(mut self, bound: Value) -> Self {
        self.bound = bound;
        self
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn fail(&mut self, law: &str, message: impl Into<String>, witness: Value) {
        self.checked += 1;
        self.failed += 1;
        if self.violations.len() < MAX_STORED_VIOLATIONS {
            self.violations.push(Violation {
                law: law.to_string(),
                message: message.into(),
                witness,
            });
        }
    }

    /// Records one instance. The witness is only built on failure.
    pub fn check(&mut self, ok: bool, law: &str, witness: impl FnOnce() -> (String, Value)) {
        if ok {
            self.pass();
        } else {
            let (message, witness) = witness();
            self.fail(law, message, witness);
        }
    }

    /// Records the outcome of a fallible instance. Out-of-scope errors count
    /// as skipped, other errors as violations.
    pub fn outcome(&mut self, law: &str, result: Result<bool>, witness: impl FnOnce() -> Value) {
        match result {
            Ok(true) => self.pass(),
            Ok(false) => self.fail(law, "diagram does not commute", witness()),
            Err(e) if e.is_out_of_scope() => self.skip(),
            Err(e) => self.fail(law, e.to_string(), witness()),
        }
    }

    /// Like [`Report::outcome`] for a computation whose value is irrelevant.
    pub fn defined<T>(&mut self, law: &str, result: Result<T>, witness: impl FnOnce() -> Value) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) if e.is_out_of_scope() => {
                self.skip();
                None
            }
            Err(e) => {
                self.fail(law, e.to_string(), witness());
                None
            }
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.failed += other.failed;
        for v in other.violations {
            if self.violations.len() >= MAX_STORED_VIOLATIONS {
                break;
            }
            self.violations.push(v);
        }
    }

    pub fn is_ok(&self) -> bool {
        self.failed == 0
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn coverage(&self) -> f64 {
        let total = self.checked + self.skipped;
        if total == 0 {
            1.0
        } else {
            self.checked as f64 / total as f64
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "bound": self.bound,
            "checked": self.checked,
            "skipped": self.skipped,
            "failed": self.failed,
            "coverage": self.coverage(),
            "violations": self.violations.iter().map(|v| json!({
                "law": v.law,
                "message": v.message,
            })).collect::<Vec<_>>(),
            "witnesses": self.violations.iter().map(|v| v.witness.clone()).collect::<Vec<_>>(),
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} checked, {} skipped, {} failed)",
            self.suite,
            if self.is_ok() { "ok" } else { "VIOLATED" },
            self.checked,
            self.skipped,
            self.failed
        )
    }
}

/// Turns a plain error into a one-violation report.
pub fn error_report(suite: &str, law: &str, err: &Error) -> Report {
    let mut r = Report::new(suite);
    r.fail(law, err.to_string(), Value::Null);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_caps() {
        let mut r = Report::new("t");
        r.pass();
        r.skip();
        for i in 0..(MAX_STORED_VIOLATIONS + 5) {
            r.fail("law", "bad", json!(i));
        }
        assert_eq!(r.failed as usize, MAX_STORED_VIOLATIONS + 5);
        assert_eq!(r.violations.len(), MAX_STORED_VIOLATIONS);
        assert!(!r.is_ok());
        assert!(r.has_law("law"));
        let j = r.to_json();
        assert_eq!(j["skipped"], 1);
    }

    #[test]
    fn outcome_classifies_errors() {
        let mut r = Report::new("t");
        r.outcome("a", Err(Error::TruncationExceeded { level: 3, truncation: 2 }), || Value::Null);
        r.outcome("b", Err(Error::IllTyped("x".into())), || Value::Null);
        r.outcome("c", Ok(true), || Value::Null);
        assert_eq!((r.checked, r.skipped, r.failed), (2, 1, 1));
        assert!((r.coverage() - 2.0 / 3.0).abs() < 1e-12);
    }
}
