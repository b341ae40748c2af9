//! The verification checks. Each one evaluates a single statement on one
//! input (one code, or a pair of codes) and records the values it computed.

use serde::Serialize;
use serde_json::{json, Map, Value};
use wpbm_core::{Code, Error, Result, WeightFn};

use crate::generate::{Envelope, TrialRng};

pub mod constructions;
pub mod metric;
pub mod radius;
pub mod tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    /// A violation fails the run.
    Hard,
    /// A violation is logged as a discrepancy.
    Soft,
}

pub type Generate = fn(&mut TrialRng, &Envelope, u64) -> Result<Vec<Code>>;
pub type Cases = fn(&Envelope, u64) -> Result<Vec<Vec<Code>>>;
pub type Evaluate = fn(&[Code], &mut Eval) -> Result<()>;

pub enum Kind {
    /// Fresh seeded inputs per trial.
    Random { generate: Generate, default_trials: u64 },
    /// A fixed list of inputs covering an envelope; trials are ignored.
    Exhaustive { cases: Cases },
}

pub struct Check {
    pub id: &'static str,
    pub tags: &'static [&'static str],
    pub statement: &'static str,
    pub severity: Severity,
    /// How many codes `evaluate` expects.
    pub arity: usize,
    pub kind: Kind,
    pub evaluate: Evaluate,
}

impl Check {
    pub fn matches(&self, filter: &str) -> bool {
        filter == "all"
            || filter == self.id
            || self.tags.contains(&filter)
            || (filter == "hard" && self.severity == Severity::Hard)
            || (filter == "soft" && self.severity == Severity::Soft)
    }
}

/// Collects computed values and violated claims for one evaluation.
#[derive(Debug, Default)]
pub struct Eval {
    pub values: Map<String, Value>,
    pub violations: Vec<Value>,
    pub skipped: Vec<Value>,
    pub claims: usize,
}

impl Eval {
    pub fn value(&mut self, key: &str, v: impl Serialize) {
        self.values.insert(key.to_string(), serde_json::to_value(v).expect("values serialize"));
    }

    /// Records one claim; `detail` goes into the witness if it fails.
    pub fn claim(&mut self, name: &str, holds: bool, detail: Value) {
        self.claims += 1;
        if !holds {
            self.violations.push(json!({ "claim": name, "detail": detail }));
        }
    }

    /// Records a claim whose hypothesis does not hold on this input.
    pub fn skip(&mut self, name: &str, reason: &str) {
        self.skipped.push(json!({ "claim": name, "reason": reason }));
    }
}

/// `d` of a code, or `None` when it has fewer than two words.
pub fn min_distance(code: &Code) -> Result<Option<u32>> {
    match code.min_distance() {
        Ok(d) => Ok(Some(d)),
        Err(Error::TooFewWords) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The same code measured with Hamming coordinate weight.
pub fn hamming(code: &Code) -> Result<Code> {
    code.with_weight(WeightFn::hamming(code.field()))
}

/// Covering radius of a linear code, computed by full scan and cross-checked
/// against the heaviest coset leader.
pub fn covering_radius(code: &Code, eval: &mut Eval) -> Result<u32> {
    let scan = code.covering_radius()?;
    if code.is_linear() {
        let leaders = code.coset_table()?.max_weight;
        eval.claim(
            "covering radius by scan equals heaviest coset leader",
            scan == leaders,
            json!({ "scan": scan, "coset_leaders": leaders }),
        );
    }
    Ok(scan)
}

pub fn min_opt(xs: impl IntoIterator<Item = Option<u32>>) -> Option<u32> {
    xs.into_iter().flatten().min()
}

pub fn registry() -> Vec<Check> {
    let mut all = Vec::new();
    all.extend(metric::checks());
    all.extend(radius::checks());
    all.extend(constructions::checks());
    all.extend(tensor::checks());
    all.sort_by_key(|c| c.id);
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_descriptive() {
        let reg = registry();
        let mut ids: Vec<_> = reg.iter().map(|c| c.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
        for c in &reg {
            assert!(c.id.chars().all(|ch| ch.is_ascii_lowercase() || ch == '-'), "{}", c.id);
            assert!(!c.statement.is_empty());
        }
    }
}
