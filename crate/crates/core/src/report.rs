//! Machine-readable verification reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::groups::GroupKind;

pub const SCHEMA_VERSION: u32 = 1;

/// One check: what was claimed, what came out, and whether they agree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Short statement of the claim under test.
    pub anchor: String,
    pub passed: bool,
    pub values: Value,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        passed: bool,
        values: Value,
    ) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            passed,
            values,
        }
    }
}

/// Per-case numbers compared by the main equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSummary {
    pub kind: GroupKind,
    pub r: u64,
    pub hgens: String,
    pub hsize: usize,
    pub conj_bruteforce: usize,
    pub conj_formula: u64,
    pub triangles: usize,
    pub chi: i64,
    pub expected_chi: i64,
    pub equality: bool,
}

pub const CSV_HEADER: &str =
    "kind,r,hgens,hsize,conj_brute,conj_formula,triangles,chi,expected,equality";

impl CaseSummary {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},\"{}\",{},{},{},{},{},{},{}",
            self.kind,
            self.r,
            self.hgens,
            self.hsize,
            self.conj_bruteforce,
            self.conj_formula,
            self.triangles,
            self.chi,
            self.expected_chi,
            self.equality
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<CaseSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(
        command: &str,
        checks: Vec<Check>,
        summary: Option<CaseSummary>,
        notes: Vec<String>,
    ) -> Self {
        let passed = checks.iter().all(|c| c.passed) && summary.as_ref().is_none_or(|s| s.equality);
        VerificationReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            passed,
            checks,
            summary,
            notes,
        }
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark}  {:width$}  {}", c.name, c.anchor);
        }
        if let Some(s) = &self.summary {
            let _ = writeln!(
                out,
                "\n{} r={} H=<{}> #H={} conj={} (formula {}) triangles={} chi={} expected={} equality={}",
                s.kind,
                s.r,
                s.hgens,
                s.hsize,
                s.conj_bruteforce,
                s.conj_formula,
                s.triangles,
                s.chi,
                s.expected_chi,
                s.equality
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed {
                "all checks passed"
            } else {
                "some checks failed"
            }
        );
        out
    }
}

/// Sweep rows rendered as CSV with a fixed header.
pub fn sweep_csv(rows: &[CaseSummary]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn sweep_table(rows: &[CaseSummary]) -> String {
    let mut out = format!(
        "{:<4} {:>4} {:<14} {:>6} {:>6} {:>6} {:>9} {:>6} {:>8} {}\n",
        "kind",
        "r",
        "hgens",
        "hsize",
        "conj",
        "formula",
        "triangles",
        "chi",
        "expected",
        "equality"
    );
    for s in rows {
        let _ = writeln!(
            out,
            "{:<4} {:>4} {:<14} {:>6} {:>6} {:>6} {:>9} {:>6} {:>8} {}",
            s.kind.to_string(),
            s.r,
            s.hgens,
            s.hsize,
            s.conj_bruteforce,
            s.conj_formula,
            s.triangles,
            s.chi,
            s.expected_chi,
            s.equality
        );
    }
    out
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    schema: u32,
    command: &'static str,
    passed: bool,
    rows: &'a [CaseSummary],
}

pub fn sweep_json(rows: &[CaseSummary], passed: bool) -> String {
    let doc = SweepDocument {
        schema: SCHEMA_VERSION,
        command: "sweep",
        passed,
        rows,
    };
    serde_json::to_string_pretty(&doc).expect("rows serialize") + "\n"
}
