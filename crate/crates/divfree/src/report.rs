//! Machine-readable verification reports. A report is deterministic given
//! `(config, seed)`: records are sorted by a canonical key before emission
//! and no wall-clock data is stored.

use serde::{Deserialize, Serialize};

use crate::sample::SuiteConfig;

/// One named check with its inputs and outcome. Passing checks keep the
/// detail fields short; failing checks carry the exact disagreement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub version: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: &str, config: &SuiteConfig) -> Self {
        Report {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            checks: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    /// Records an aggregated check that passed on every sample.
    pub fn pass(&mut self, name: impl Into<String>, inputs: impl Into<String>) {
        self.push(CheckRecord {
            name: name.into(),
            inputs: inputs.into(),
            expected: "ok".into(),
            got: "ok".into(),
            pass: true,
        });
    }

    /// Records a failed check with the exact disagreement.
    pub fn fail(
        &mut self,
        name: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
    ) {
        self.push(CheckRecord {
            name: name.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            got: got.into(),
            pass: false,
        });
    }

    /// Records a boolean outcome with a uniform shape.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        inputs: impl Into<String>,
        ok: bool,
        detail_on_fail: impl FnOnce() -> (String, String),
    ) {
        if ok {
            self.pass(name, inputs);
        } else {
            let (expected, got) = detail_on_fail();
            self.fail(name, inputs, expected, got);
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        if record.pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(record);
    }

    /// Absorbs another report's records under this report's counters.
    pub fn merge(&mut self, other: Report) {
        for record in other.checks {
            self.push(record);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Sorts records by name so emission is order-independent.
    pub fn finalize(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    /// One human-readable line per check plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{status}] {} ({})\n", c.name, c.inputs));
            if !c.pass {
                out.push_str(&format!(
                    "       expected: {}\n       got:      {}\n",
                    c.expected, c.got
                ));
            }
        }
        out.push_str(&format!(
            "suite {}: {} passed, {} failed\n",
            self.suite, self.passed, self.failed
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_and_finalize() {
        let cfg = SuiteConfig::default();
        let mut r = Report::new("demo", &cfg);
        r.pass("b-check", "x");
        r.fail("a-check", "y", "0", "1");
        let r = r.finalize();
        assert_eq!(r.passed, 1);
        assert_eq!(r.failed, 1);
        assert!(!r.all_passed());
        assert_eq!(r.checks[0].name, "a-check");
        let text = r.render_text();
        assert!(text.contains("[FAIL] a-check"));
    }

    #[test]
    fn report_json_round_trip() {
        let cfg = SuiteConfig::default();
        let mut r = Report::new("demo", &cfg);
        r.pass("only", "inputs");
        let r = r.finalize();
        let json = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.suite, "demo");
        assert_eq!(back.passed, 1);
    }
}
