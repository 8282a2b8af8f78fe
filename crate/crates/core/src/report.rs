//! Verification reports: one entry per checked claim, rendered as
//! deterministic JSON or text.
//!
//! Only the `metadata` block carries run-dependent data (wall times); the
//! `checks` array is byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt::{self, Display};

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The printed claim fails but a pinned alternative holds; reported, not fatal.
    RecordedDiscrepancy,
    OutOfScope,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::RecordedDiscrepancy => "DISCREPANCY",
            Status::OutOfScope => "OUT-OF-SCOPE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: Status,
    /// Offending component, order of u, or the recorded alternative.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    fn make(id: &str, description: &str, status: Status, witness: Option<String>) -> Self {
        Check { id: id.to_string(), description: description.to_string(), status, witness }
    }

    pub fn pass(id: &str, description: &str) -> Self {
        Check::make(id, description, Status::Pass, None)
    }

    /// A passing check that still carries computed data worth showing.
    pub fn pass_with(id: &str, description: &str, note: &str) -> Self {
        Check::make(id, description, Status::Pass, Some(note.to_string()))
    }

    pub fn fail(id: &str, description: &str, witness: &str) -> Self {
        Check::make(id, description, Status::Fail, Some(witness.to_string()))
    }

    pub fn discrepancy(id: &str, description: &str, witness: &str) -> Self {
        Check::make(id, description, Status::RecordedDiscrepancy, Some(witness.to_string()))
    }

    pub fn out_of_scope(id: &str, description: &str, note: &str) -> Self {
        Check::make(id, description, Status::OutOfScope, Some(note.to_string()))
    }

    pub fn from_bool(id: &str, description: &str, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(id, description)
        } else {
            Check::fail(id, description, &witness())
        }
    }

    /// Pass iff `got == want`, otherwise a failure showing both.
    pub fn equality<T: PartialEq + Display>(id: &str, description: &str, got: &T, want: &T) -> Self {
        Check::from_bool(id, description, got == want, || format!("got {got}; expected {want}"))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub recorded_discrepancy: usize,
    pub out_of_scope: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    /// Wall time per check group, in milliseconds.
    pub wall_time_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub metadata: Metadata,
}

impl VerificationReport {
    pub fn new(suite: &str, checks: Vec<Check>, wall_time_ms: BTreeMap<String, f64>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::RecordedDiscrepancy => summary.recorded_discrepancy += 1,
                Status::OutOfScope => summary.out_of_scope += 1,
            }
        }
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            checks,
            summary,
            metadata: Metadata { tool_version: env!("CARGO_PKG_VERSION").to_string(), wall_time_ms },
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON of the `checks` array alone: the run-independent part.
    pub fn checks_json(&self) -> String {
        serde_json::to_string_pretty(&self.checks).expect("checks serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite: {}\n", self.suite);
        for c in &self.checks {
            out.push_str(&format!("{:<12} {}  {}\n", c.status.to_string(), c.id, c.description));
            if let Some(w) = &c.witness {
                out.push_str(&format!("{:<12} {}\n", "", w));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} recorded discrepancies, {} out of scope\n",
            s.pass, s.fail, s.recorded_discrepancy, s.out_of_scope
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_serialize_kebab_case() {
        let c = Check::discrepancy("x", "d", "w");
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"recorded-discrepancy\""));
        let back: Check = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn summary_counts_and_failure_flag() {
        let r = VerificationReport::new(
            "t",
            vec![Check::pass("a", ""), Check::discrepancy("b", "", ""), Check::out_of_scope("c", "", "")],
            BTreeMap::new(),
        );
        assert!(!r.has_failures());
        let r = VerificationReport::new("t", vec![Check::fail("a", "", "w")], BTreeMap::new());
        assert!(r.has_failures());
        assert!(r.to_text().contains("FAIL"));
    }
}
