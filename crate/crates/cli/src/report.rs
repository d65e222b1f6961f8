use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One checked claim of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Assertion {
    /// Passes when `max_deviation <= tolerance`. NaN never passes.
    pub fn within(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> Self {
        Assertion {
            name: name.into(),
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        }
    }

    /// Lower-bound check: passes when `observed > threshold`. The observed
    /// value is stored in `max_deviation` and the bound in `tolerance`.
    pub fn exceeds(name: impl Into<String>, observed: f64, threshold: f64) -> Self {
        Assertion {
            name: name.into(),
            max_deviation: observed,
            tolerance: threshold,
            pass: observed > threshold,
        }
    }
}

/// Single structured document emitted by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: Value,
    pub results: Value,
    pub assertions: Vec<Assertion>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(config: Value, results: Value, assertions: Vec<Assertion>) -> Self {
        let verdict = if assertions.iter().all(|a| a.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Report {
            config,
            results,
            assertions,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("config:\n");
        flatten(&self.config, "", &mut out);
        out.push_str("results:\n");
        flatten(&self.results, "", &mut out);
        out.push_str("assertions:\n");
        for a in &self.assertions {
            let _ = writeln!(
                out,
                "  [{}] {}  max_deviation={:e}  tolerance={:e}",
                if a.pass { "PASS" } else { "FAIL" },
                a.name,
                a.max_deviation,
                a.tolerance
            );
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            match self.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
            }
        );
        out
    }
}

fn flatten(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(v, &key, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, &format!("{prefix}[{i}]"), out);
            }
        }
        leaf => {
            let _ = writeln!(out, "  {prefix} = {leaf}");
        }
    }
}
