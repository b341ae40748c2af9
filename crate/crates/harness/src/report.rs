//! Check reports: one JSON line each, plus a per-check summary table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    SoftDiscrepancy,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub statement: String,
    pub digest: String,
    pub seed: u64,
    pub status: Status,
    pub witness: Value,
    pub values: Value,
    /// Only filled when timings are requested, so default output is reproducible.
    pub elapsed_us: Option<u64>,
}

impl CheckReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Canonical report order: check id, then digest, then seed.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| (&a.check, &a.digest, a.seed).cmp(&(&b.check, &b.digest, b.seed)));
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub soft: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::NotApplicable => self.not_applicable += 1,
            Status::SoftDiscrepancy => self.soft += 1,
        }
    }
}

pub fn tally(reports: &[CheckReport]) -> BTreeMap<String, Tally> {
    let mut out: BTreeMap<String, Tally> = BTreeMap::new();
    for r in reports {
        out.entry(r.check.clone()).or_default().add(r.status);
    }
    out
}

pub fn summary_table(reports: &[CheckReport]) -> String {
    let rows = tally(reports);
    let width = rows.keys().map(String::len).max().unwrap_or(5).max(5);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$}  {:>6} {:>6} {:>6} {:>6}", "check", "pass", "fail", "n/a", "soft");
    let mut total = Tally::default();
    for (id, t) in &rows {
        let _ = writeln!(
            out,
            "{id:<width$}  {:>6} {:>6} {:>6} {:>6}",
            t.pass, t.fail, t.not_applicable, t.soft
        );
        total.pass += t.pass;
        total.fail += t.fail;
        total.not_applicable += t.not_applicable;
        total.soft += t.soft;
    }
    let _ = writeln!(
        out,
        "{:<width$}  {:>6} {:>6} {:>6} {:>6}",
        "total", total.pass, total.fail, total.not_applicable, total.soft
    );
    out
}
