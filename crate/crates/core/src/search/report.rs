//! Scan and hunt reports in TSV and JSON.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "berge-report/1";

/// One failed check: which claim, where, and both sides.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub claim: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub certificate: Option<String>,
}

/// Per-claim tallies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSummary {
    pub claim: String,
    pub checked: u64,
    pub skipped: u64,
    pub violations: u64,
}

/// Outcome of a scan or hunt. `elapsed` is kept out of the serialized forms
/// so identical runs give identical bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: String,
    pub grid: String,
    pub claims: Vec<ClaimSummary>,
    pub violations: Vec<Violation>,
    pub checked: u64,
    pub skipped: u64,
    pub undecided: u64,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn new(grid: impl Into<String>) -> Self {
        ScanReport {
            schema: REPORT_SCHEMA.into(),
            grid: grid.into(),
            claims: Vec::new(),
            violations: Vec::new(),
            checked: 0,
            skipped: 0,
            undecided: 0,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Header comments, then `claim params lhs rhs status` rows: one summary
    /// row per claim followed by one row per violation.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# schema\t{}", self.schema).unwrap();
        writeln!(out, "# grid\t{}", self.grid).unwrap();
        writeln!(out, "# checked\t{}", self.checked).unwrap();
        writeln!(out, "# skipped\t{}", self.skipped).unwrap();
        writeln!(out, "# undecided\t{}", self.undecided).unwrap();
        for note in &self.notes {
            writeln!(out, "# note\t{note}").unwrap();
        }
        writeln!(out, "claim\tparams\tlhs\trhs\tstatus").unwrap();
        for c in &self.claims {
            let status = if c.violations == 0 { "ok" } else { "violated" };
            writeln!(
                out,
                "{}\tchecked={} skipped={}\t-\t-\t{status} ({} violations)",
                c.claim, c.checked, c.skipped, c.violations
            )
            .unwrap();
        }
        for v in &self.violations {
            writeln!(out, "{}\t{}\t{}\t{}\tviolation", v.claim, v.params, v.lhs, v.rhs).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
