//! Verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactPass,
    NumericPass,
    Fail,
}

impl Status {
    pub fn passed(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub paper_ref: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    /// An identity checked in exact arithmetic.
    pub fn exact(id: impl Into<String>, paper_ref: &str, anchor: &str, ok: bool, witness: Option<String>) -> Self {
        Check {
            id: id.into(),
            paper_ref: paper_ref.into(),
            anchor: anchor.into(),
            status: if ok { Status::ExactPass } else { Status::Fail },
            tolerance: None,
            witness,
        }
    }

    /// A floating-point comparison; `err` is the observed deviation.
    pub fn numeric(id: impl Into<String>, paper_ref: &str, anchor: &str, err: f64, tolerance: f64) -> Self {
        Check {
            id: id.into(),
            paper_ref: paper_ref.into(),
            anchor: anchor.into(),
            status: if err <= tolerance {
                Status::NumericPass
            } else {
                Status::Fail
            },
            tolerance: Some(tolerance),
            witness: Some(format!("{:.3e}", err)),
        }
    }

    /// A check that could not run.
    pub fn error(id: impl Into<String>, paper_ref: &str, anchor: &str, err: impl std::fmt::Display) -> Self {
        Check::exact(id, paper_ref, anchor, false, Some(format!("error: {}", err)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub q: f64,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, q: f64, seed: u64, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report {
            suite: suite.into(),
            q,
            seed,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.status.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::ExactPass => "exact-pass",
                Status::NumericPass => "numeric-pass",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{:<12} {}", status, c.id));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  [{}]", w));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            failed
        ));
        out
    }
}
