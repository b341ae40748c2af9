//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wpbm_core::{BlockSpace, Code, Elem, Field, Labeling, Poset, WeightFn};
use wpbm_harness::report::{CheckReport, Status};
use wpbm_harness::suite::{self, Settings};

const METRIC_ENVELOPE_BUDGET: Duration = Duration::from_secs(10);
const FULL_SUITE_BUDGET: Duration = Duration::from_secs(60);
const COVERING_ORACLE_CLAIM: &str = "covering radius by scan equals heaviest coset leader";

struct Gate {
    failures: usize,
}

impl Gate {
    fn line(&mut self, n: u32, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!("criterion {n:>2} {:<4} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn with_threads<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f)
}

fn of<'a>(reports: &'a [CheckReport], id: &str) -> Vec<&'a CheckReport> {
    reports.iter().filter(|r| r.check == id).collect()
}

fn count(reports: &[&CheckReport], status: Status) -> usize {
    reports.iter().filter(|r| r.status == status).count()
}

/// Passes when the check ran at least `min` times with no failure.
fn clean(reports: &[CheckReport], id: &str, min: usize) -> (bool, String) {
    let rs = of(reports, id);
    let fails = count(&rs, Status::Fail);
    let ok = rs.len() >= min && fails == 0;
    (ok, format!("{id}: {} runs, {} pass, {} n/a, {fails} fail", rs.len(), count(&rs, Status::Pass), count(&rs, Status::NotApplicable)))
}

fn all_clean(reports: &[CheckReport], ids: &[&str], min: usize) -> (bool, String) {
    let parts: Vec<_> = ids.iter().map(|id| clean(reports, id, min)).collect();
    (parts.iter().all(|p| p.0), parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("; "))
}

fn example_pair() -> Vec<Code> {
    let f = Field::new(2).unwrap();
    let words = |poset: Poset, sizes: Vec<usize>, w: &[&[Elem]]| {
        let space = BlockSpace::new(poset, Labeling::new(sizes).unwrap(), WeightFn::hamming(&f)).unwrap();
        Code::explicit(space, w.iter().map(|x| x.to_vec()).collect()).unwrap()
    };
    vec![words(Poset::chain(2), vec![1, 1], &[&[0, 0], &[1, 1]]), words(Poset::chain(1), vec![1], &[&[0], &[1]])]
}

fn main() -> ExitCode {
    let mut gate = Gate { failures: 0 };
    let settings = Settings::default();
    let all = suite::select(&["all".to_string()]);

    let start = Instant::now();
    let full = with_threads(1, || suite::run(&all, &settings));
    let full_elapsed = start.elapsed();

    let envelope = suite::select(&["metric-axioms-envelope".to_string()]);
    let start = Instant::now();
    let metric = with_threads(1, || suite::run(&envelope, &settings));
    let metric_elapsed = start.elapsed();
    let (ok, detail) = clean(&metric, "metric-axioms-envelope", 1);
    gate.line(
        1,
        "metric axioms over the q in {2,3}, s <= 3, k <= 2 envelope",
        ok && metric_elapsed < METRIC_ENVELOPE_BUDGET,
        format!("{detail}; {:.2}s (budget {}s)", metric_elapsed.as_secs_f64(), METRIC_ENVELOPE_BUDGET.as_secs()),
    );

    let (ok, detail) = clean(&full, "reductions", 1);
    gate.line(2, "Hamming, Lee, poset-block and NRT reductions", ok, detail);

    let (ok, detail) = clean(&full, "ball-lemma", 1);
    gate.line(3, "ball inclusion lemma on Lee chains over GF(5)", ok, detail);

    let (ok, detail) = clean(&full, "packing-radius-chain", 200);
    let mut claims = std::collections::BTreeMap::<String, usize>::new();
    for r in of(&full, "packing-radius-chain") {
        for v in r.witness.get("violations").and_then(|v| v.as_array()).into_iter().flatten() {
            *claims.entry(v["claim"].as_str().unwrap_or_default().to_string()).or_default() += 1;
        }
    }
    gate.line(4, "packing radius bound and equality criterion on chains", ok, format!("{detail}; violated claims {claims:?}"));

    let (ok, detail) = clean(&full, "chain-covering-radius", 200);
    gate.line(5, "chain covering radius between (r-1)M_w and rM_w", ok, detail);

    let (ok, detail) = all_clean(&full, &["dsum-mindist", "dsum-covering-radius"], 100);
    let spot = suite::run_on(&suite::select(&["dsum-mindist".to_string()]), &example_pair(), &settings);
    let values = &spot[0].values;
    let spot_ok = values["d_disjoint"] == 1 && values["d_linear"] == 2;
    gate.line(
        6,
        "direct sum distances and covering radii",
        ok && spot_ok,
        format!("{detail}; example pair d = ({}, {})", values["d_disjoint"], values["d_linear"]),
    );

    let (ok, detail) = clean(&full, "dsum-coset-leaders", 100);
    gate.line(7, "pairs of coset leaders lead the direct sum", ok, detail);

    let ids = [
        "plotkin-mindist",
        "plotkin-covering-radius",
        "extend-mindist",
        "extend-covering-radius",
        "puncture-weight",
        "puncture-mindist",
        "puncture-covering-radius",
    ];
    let (ok, detail) = all_clean(&full, &ids, 100);
    gate.line(8, "(u|u+v), extension and puncturing bounds", ok, detail);

    let tensor: Vec<_> = full.iter().filter(|r| r.check.starts_with("tensor-")).cloned().collect();
    let (hard_ok, hard) = all_clean(&tensor, &["tensor-covering-lower", "tensor-chain-weight"], 100);
    let mut ids: Vec<_> = tensor.iter().map(|r| r.check.as_str()).collect();
    ids.dedup();
    let enough = ids.iter().all(|id| of(&tensor, id).len() >= 100);
    let soft: Vec<_> = ids
        .iter()
        .map(|id| (id, count(&of(&tensor, id), Status::SoftDiscrepancy)))
        .filter(|(_, n)| *n > 0)
        .map(|(id, n)| format!("{id} x{n}"))
        .collect();
    gate.line(
        9,
        "tensor product suites",
        hard_ok && enough,
        format!("{hard}; {} checks ran >= 100 pairs: {enough}; soft discrepancies: [{}]", ids.len(), soft.join(", ")),
    );

    let oracle_claims = full.iter().filter(|r| r.values.get("rho").is_some() || r.check.contains("covering")).count();
    let oracle_breaks: usize = full
        .iter()
        .filter_map(|r| r.witness.get("violations"))
        .flat_map(|v| v.as_array().into_iter().flatten())
        .filter(|v| v["claim"] == COVERING_ORACLE_CLAIM)
        .count();
    gate.line(
        10,
        "covering radius by scan equals heaviest coset leader",
        oracle_breaks == 0,
        format!("{oracle_breaks} mismatches in {oracle_claims} reports that compute covering radii"),
    );

    let parallel = with_threads(4, || suite::run(&all, &settings));
    let lines = |rs: &[CheckReport]| rs.iter().map(CheckReport::to_json_line).collect::<Vec<_>>().join("\n");
    let identical = lines(&full) == lines(&parallel);
    gate.line(
        11,
        "default suite under 60s on one thread, identical output on four",
        full_elapsed < FULL_SUITE_BUDGET && identical,
        format!("{} reports in {:.2}s; byte-identical: {identical}", full.len(), full_elapsed.as_secs_f64()),
    );

    println!("{} of 11 criteria failed", gate.failures);
    if gate.failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
