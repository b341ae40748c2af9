//! Runs selected checks over generated or supplied inputs and collects reports.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use wpbm_core::{Code, Result, DEFAULT_MAX_SPACE};

use crate::checks::{registry, Check, Eval, Kind, Severity};
use crate::generate::{self, Envelope};
use crate::instance::{digest, Instance};
use crate::report::{sort_reports, CheckReport, Status};

#[derive(Debug, Clone)]
pub struct Settings {
    pub seed: u64,
    /// Overrides every random check's default trial count.
    pub trials: Option<u64>,
    pub q: Option<u32>,
    pub max_space: u64,
    pub timings: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 0, trials: None, q: None, max_space: DEFAULT_MAX_SPACE, timings: false }
    }
}

/// Checks matching any of the filters (ids, tags, `hard`, `soft`, `all`).
pub fn select(filters: &[String]) -> Vec<Check> {
    registry().into_iter().filter(|c| filters.iter().any(|f| c.matches(f))).collect()
}

struct Job<'a> {
    check: &'a Check,
    seed: u64,
    /// Exhaustive inputs, already built.
    codes: Option<Vec<Code>>,
}

pub fn run(checks: &[Check], settings: &Settings) -> Vec<CheckReport> {
    let env = Envelope::with_q(settings.q);
    let mut jobs = Vec::new();
    let mut reports = Vec::new();
    for check in checks {
        match &check.kind {
            Kind::Random { default_trials, .. } => {
                for trial in 0..settings.trials.unwrap_or(*default_trials) {
                    let seed = generate::trial_seed(settings.seed, check.id, trial);
                    jobs.push(Job { check, seed, codes: None });
                }
            }
            Kind::Exhaustive { cases } => match cases(&env, settings.max_space) {
                Ok(all) => jobs.extend(
                    all.into_iter().enumerate().map(|(i, codes)| Job { check, seed: i as u64, codes: Some(codes) }),
                ),
                Err(e) => reports.push(error_report(check, String::new(), 0, &e, &[])),
            },
        }
    }
    reports.par_extend(jobs.into_par_iter().map(|job| {
        let codes = match job.codes {
            Some(codes) => Ok(codes),
            None => match &job.check.kind {
                Kind::Random { generate, .. } => {
                    generate(&mut generate::rng(job.seed), &env, settings.max_space)
                }
                Kind::Exhaustive { .. } => unreachable!("exhaustive jobs carry their inputs"),
            },
        };
        match codes {
            Ok(codes) => evaluate(job.check, &codes, job.seed, settings.timings),
            Err(e) => error_report(job.check, String::new(), job.seed, &e, &[]),
        }
    }));
    sort_reports(&mut reports);
    reports
}

/// Reruns one random trial of a check from its seed.
pub fn replay(check: &Check, seed: u64, settings: &Settings) -> Result<CheckReport> {
    let env = Envelope::with_q(settings.q);
    let codes = match &check.kind {
        Kind::Random { generate, .. } => generate(&mut generate::rng(seed), &env, settings.max_space)?,
        Kind::Exhaustive { cases } => {
            let mut all = cases(&env, settings.max_space)?;
            let len = all.len();
            if seed as usize >= len {
                return Err(wpbm_core::Error::OutOfRange { index: seed as usize + 1, len });
            }
            all.swap_remove(seed as usize)
        }
    };
    Ok(evaluate(check, &codes, seed, settings.timings))
}

/// Evaluates checks of matching arity on user-supplied codes.
pub fn run_on(checks: &[Check], codes: &[Code], settings: &Settings) -> Vec<CheckReport> {
    let mut reports: Vec<CheckReport> = checks
        .par_iter()
        .filter(|c| c.arity == codes.len())
        .map(|c| evaluate(c, codes, settings.seed, settings.timings))
        .collect();
    sort_reports(&mut reports);
    reports
}

fn instances(codes: &[Code]) -> Vec<Instance> {
    codes.iter().map(|c| Instance::from_code(c).canonical().unwrap_or_else(|_| Instance::from_code(c))).collect()
}

pub fn evaluate(check: &Check, codes: &[Code], seed: u64, timings: bool) -> CheckReport {
    let inst = instances(codes);
    let dig = digest(&inst);
    let start = Instant::now();
    let mut eval = Eval::default();
    if let Err(e) = (check.evaluate)(codes, &mut eval) {
        return error_report(check, dig, seed, &e, &inst);
    }
    let elapsed = timings.then(|| start.elapsed().as_micros() as u64);
    let status = if !eval.violations.is_empty() {
        match check.severity {
            Severity::Hard => Status::Fail,
            Severity::Soft => Status::SoftDiscrepancy,
        }
    } else if eval.claims == 0 {
        Status::NotApplicable
    } else {
        Status::Pass
    };
    let witness = match status {
        Status::Fail | Status::SoftDiscrepancy => {
            json!({ "instances": inst, "violations": eval.violations, "skipped": eval.skipped })
        }
        _ if !eval.skipped.is_empty() => json!({ "skipped": eval.skipped }),
        _ => Value::Null,
    };
    CheckReport {
        check: check.id.to_string(),
        statement: check.statement.to_string(),
        digest: dig,
        seed,
        status,
        witness,
        values: Value::Object(eval.values),
        elapsed_us: elapsed,
    }
}

fn error_report(check: &Check, digest: String, seed: u64, e: &wpbm_core::Error, inst: &[Instance]) -> CheckReport {
    CheckReport {
        check: check.id.to_string(),
        statement: check.statement.to_string(),
        digest,
        seed,
        status: Status::Fail,
        witness: json!({ "error": e.to_string(), "instances": inst }),
        values: Value::Null,
        elapsed_us: None,
    }
}

pub fn any_hard_failure(reports: &[CheckReport]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(trials: u64) -> Settings {
        Settings { seed: 3, trials: Some(trials), ..Settings::default() }
    }

    #[test]
    fn select_by_id_and_tag() {
        assert_eq!(select(&["metric-axioms".into()]).len(), 1);
        assert!(select(&["tensor".into()]).len() > 5);
        assert_eq!(select(&["all".into()]).len(), registry().len());
    }

    #[test]
    fn metric_axioms_pass_and_replay() {
        let checks = select(&["metric-axioms".into()]);
        let reports = run(&checks, &settings(5));
        assert_eq!(reports.len(), 5);
        assert!(reports.iter().all(|r| r.status == Status::Pass));
        let again = replay(&checks[0], reports[2].seed, &settings(5)).unwrap();
        assert_eq!(again.to_json_line(), reports[2].to_json_line());
    }

    #[test]
    fn timings_only_when_asked() {
        let checks = select(&["extend-mindist".into()]);
        let plain = run(&checks, &settings(2));
        assert!(plain.iter().all(|r| r.elapsed_us.is_none()));
        let timed = run(&checks, &Settings { timings: true, ..settings(2) });
        assert!(timed.iter().all(|r| r.elapsed_us.is_some()));
    }
}
