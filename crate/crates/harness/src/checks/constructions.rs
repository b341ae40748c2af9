//! Direct sum, `(u | u + v)`, extension and puncturing.

use std::collections::BTreeSet;

use rand::Rng;
use serde_json::json;
use wpbm_core::constructions::{direct_sum_code, extended_code, plotkin_code, punctured_code};
use wpbm_core::{BlockSpace, Code, Elem, Field, Labeling, Result, SumOrder};

use super::radius::{random_linear, random_space};
use super::{covering_radius, min_distance, min_opt, Check, Eval, Kind, Severity};
use crate::generate::{self, Envelope, Shape, TrialRng};

const ORDERS: [SumOrder; 2] = [SumOrder::Disjoint, SumOrder::Linear];

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            id: "dsum-mindist",
            tags: &["direct-sum", "constructions"],
            statement: "direct sum: d over the disjoint union is min{d(C1), d(C2)}; d over the linear sum is d(C1)",
            severity: Severity::Hard,
            arity: 2,
            kind: Kind::Random { generate: sum_pair_mixed, default_trials: 100 },
            evaluate: dsum_mindist,
        },
        Check {
            id: "dsum-covering-radius",
            tags: &["direct-sum", "constructions", "covering"],
            statement: "direct sum of linear codes: covering radius is rho(C1)+rho(C2) over the disjoint union and s*M_w+rho(C2) over the linear sum (C2 not the whole space)",
            severity: Severity::Hard,
            arity: 2,
            kind: Kind::Random { generate: sum_pair_linear, default_trials: 100 },
            evaluate: dsum_covering,
        },
        Check {
            id: "dsum-coset-leaders",
            tags: &["direct-sum", "constructions", "cosets"],
            statement: "direct sum of linear codes: a pair of coset leaders is a coset leader of the sum, for both poset sums",
            severity: Severity::Hard,
            arity: 2,
            kind: Kind::Random { generate: sum_pair_small, default_trials: 100 },
            evaluate: dsum_leaders,
        },
        Check {
            id: "plotkin-mindist",
            tags: &["plotkin", "constructions"],
            statement: "(u|u+v): d >= min{d(C1), d(C2)} (disjoint), d >= d(C1) (linear sum); refined forms when (a,b) -> a+b is injective on C1 x C2",
            severity: Severity::Hard,
            arity: 2,
            kind: Kind::Random { generate: plotkin_pair_mixed, default_trials: 100 },
            evaluate: plotkin_mindist,
        },
        Check {
            id: "plotkin-covering-radius",
            tags: &["plotkin", "constructions", "covering"],
            statement: "(u|u+v) of linear codes: covering radius <= rho(C1)+rho(C2) (disjoint), <= rho(C2)+s*M_w (linear sum)",
            severity: Severity::Hard,
            arity: 2,
            kind: Kind::Random { generate: plotkin_pair_linear, default_trials: 100 },
            evaluate: plotkin_covering,
        },
        Check {
            id: "extend-mindist",
            tags: &["extend", "constructions"],
            statement: "extended code: d <= d_ext <= d + M_w",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: extend_code_mixed, default_trials: 100 },
            evaluate: extend_mindist,
        },
        Check {
            id: "extend-covering-radius",
            tags: &["extend", "constructions", "covering"],
            statement: "extended linear code: rho <= rho_ext <= rho + M_w",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: extend_code_linear, default_trials: 100 },
            evaluate: extend_covering,
        },
        Check {
            id: "puncture-weight",
            tags: &["puncture", "constructions"],
            statement: "deleting a block never increases the weight of a vector",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: puncture_space, default_trials: 100 },
            evaluate: puncture_weight,
        },
        Check {
            id: "puncture-mindist",
            tags: &["puncture", "constructions"],
            statement: "punctured code: d(C*) <= d(C) when puncturing keeps codewords distinct",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: puncture_code_mixed, default_trials: 100 },
            evaluate: puncture_mindist,
        },
        Check {
            id: "puncture-covering-radius",
            tags: &["puncture", "constructions", "covering"],
            statement: "punctured linear code: rho(C*) <= rho(C)",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: puncture_code_linear, default_trials: 100 },
            evaluate: puncture_covering,
        },
    ]
}

#[derive(Clone, Copy)]
enum Words {
    Linear,
    Mixed,
}

fn some_code(rng: &mut TrialRng, env: &Envelope, space: &BlockSpace, words: Words) -> Result<Code> {
    match words {
        Words::Mixed if rng.gen_bool(0.4) => generate::random_word_set(rng, space, 6),
        _ => random_linear(rng, env, space, 0),
    }
}

/// Block sizes in `1..=max_k` summing to exactly `n`.
fn exact_labeling(rng: &mut TrialRng, s: usize, max_k: usize, n: usize) -> Labeling {
    let mut sizes = vec![1; s];
    let mut slack = n - s;
    while slack > 0 {
        let i = rng.gen_range(0..s);
        if sizes[i] < max_k {
            sizes[i] += 1;
            slack -= 1;
        }
    }
    Labeling::new(sizes).expect("positive sizes")
}

fn space_of_length(rng: &mut TrialRng, env: &Envelope, field: &Field, weight: &wpbm_core::WeightFn, n: usize, max_space: u64) -> Result<BlockSpace> {
    let min_s = n.div_ceil(env.max_k);
    let s = rng.gen_range(min_s..=env.max_s.min(n));
    let poset = generate::random_poset(rng, s, Shape::Any);
    let labeling = exact_labeling(rng, s, env.max_k, n);
    let _ = field;
    Ok(BlockSpace::new(poset, labeling, weight.clone())?.with_max_space(max_space))
}

/// Two codes over one field and weight with `n1 + n2` inside `max_n`.
fn sum_pair(rng: &mut TrialRng, env: &Envelope, max_space: u64, max_n: usize, words: Words) -> Result<Vec<Code>> {
    let q = env.pick_q(rng);
    let field = Field::new(q)?;
    let weight = generate::random_weight(rng, &field);
    let max_n = max_n.min(env.max_n(q));
    let n1 = rng.gen_range(1..=(max_n - 1).min(env.max_s * env.max_k));
    let n2 = rng.gen_range(1..=(max_n - n1).min(env.max_s * env.max_k));
    let a = space_of_length(rng, env, &field, &weight, n1, max_space)?;
    let b = space_of_length(rng, env, &field, &weight, n2, max_space)?;
    Ok(vec![some_code(rng, env, &a, words)?, some_code(rng, env, &b, words)?])
}

fn sum_pair_mixed(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    sum_pair(rng, env, max_space, usize::MAX, Words::Mixed)
}

fn sum_pair_linear(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    sum_pair(rng, env, max_space, usize::MAX, Words::Linear)
}

/// Pairs whose sum space has at most 2^10 vectors.
fn sum_pair_small(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    let small = Envelope { scan_budget: 1 << 10, ..env.clone() };
    sum_pair(rng, &small, max_space, usize::MAX, Words::Linear)
}

/// Two codes of the same length `n` with `2n` inside `max_n`.
fn plotkin_pair(rng: &mut TrialRng, env: &Envelope, max_space: u64, words: Words) -> Result<Vec<Code>> {
    let q = env.pick_q(rng);
    let field = Field::new(q)?;
    let weight = generate::random_weight(rng, &field);
    let n = rng.gen_range(1..=(env.max_n(q) / 2).min(env.max_s * env.max_k).max(1));
    let a = space_of_length(rng, env, &field, &weight, n, max_space)?;
    let b = space_of_length(rng, env, &field, &weight, n, max_space)?;
    Ok(vec![some_code(rng, env, &a, words)?, some_code(rng, env, &b, words)?])
}

fn plotkin_pair_mixed(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    plotkin_pair(rng, env, max_space, Words::Mixed)
}

fn plotkin_pair_linear(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    plotkin_pair(rng, env, max_space, Words::Linear)
}

fn single(rng: &mut TrialRng, env: &Envelope, max_space: u64, min_s: usize, spare: usize, words: Words) -> Result<Vec<Code>> {
    let q = env.pick_q(rng);
    let max_n = (env.max_n(q) - spare).min(env.max_s * env.max_k).max(min_s);
    let space = random_space(rng, env, q, Shape::Any, min_s, max_n, max_space)?;
    Ok(vec![some_code(rng, env, &space, words)?])
}

fn extend_code_mixed(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    single(rng, env, max_space, 1, 1, Words::Mixed)
}

fn extend_code_linear(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    single(rng, env, max_space, 1, 1, Words::Linear)
}

fn puncture_space(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    let mut codes = single(rng, env, max_space, 2, 0, Words::Linear)?;
    codes[0] = Code::zero(codes[0].space().clone());
    Ok(codes)
}

fn puncture_code_mixed(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    single(rng, env, max_space, 2, 0, Words::Mixed)
}

fn puncture_code_linear(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    single(rng, env, max_space, 2, 0, Words::Linear)
}

fn order_name(o: SumOrder) -> String {
    o.to_string()
}

fn dsum_mindist(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let (c1, c2) = (&codes[0], &codes[1]);
    let (d1, d2) = (min_distance(c1)?, min_distance(c2)?);
    eval.value("d1", d1);
    eval.value("d2", d2);
    let disjoint = min_distance(&direct_sum_code(c1, c2, SumOrder::Disjoint)?.code)?;
    eval.value("d_disjoint", disjoint);
    match min_opt([d1, d2]) {
        Some(expect) => eval.claim(
            "d over the disjoint union is min{d(C1), d(C2)}",
            disjoint == Some(expect),
            json!({ "d": disjoint, "expected": expect }),
        ),
        None => eval.skip("d over the disjoint union", "both codes have a single word"),
    }
    let linear = min_distance(&direct_sum_code(c1, c2, SumOrder::Linear)?.code)?;
    eval.value("d_linear", linear);
    match d1 {
        Some(d1) => eval.claim(
            "d over the linear sum is d(C1)",
            linear == Some(d1),
            json!({ "d": linear, "expected": d1 }),
        ),
        None => eval.skip("d over the linear sum", "C1 has a single word"),
    }
    Ok(())
}

fn dsum_covering(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let (c1, c2) = (&codes[0], &codes[1]);
    let r1 = covering_radius(c1, eval)?;
    let r2 = covering_radius(c2, eval)?;
    let s = c1.space().s() as u32;
    let mw = c1.space().weight_fn().max_weight();
    eval.value("rho1", r1);
    eval.value("rho2", r2);
    let disjoint = covering_radius(&direct_sum_code(c1, c2, SumOrder::Disjoint)?.code, eval)?;
    eval.value("rho_disjoint", disjoint);
    eval.claim(
        "covering radius over the disjoint union is rho(C1)+rho(C2)",
        disjoint == r1 + r2,
        json!({ "rho": disjoint, "expected": r1 + r2 }),
    );
    let linear = covering_radius(&direct_sum_code(c1, c2, SumOrder::Linear)?.code, eval)?;
    eval.value("rho_linear", linear);
    if c2.size() == c2.space().space_size() {
        eval.skip("covering radius over the linear sum", "C2 is the whole space");
    } else {
        eval.claim(
            "covering radius over the linear sum is s*M_w+rho(C2)",
            linear == s * mw + r2,
            json!({ "rho": linear, "expected": s * mw + r2 }),
        );
    }
    Ok(())
}

fn dsum_leaders(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let (c1, c2) = (&codes[0], &codes[1]);
    let (t1, t2) = (c1.coset_table()?, c2.coset_table()?);
    for order in ORDERS {
        let sum = direct_sum_code(c1, c2, order)?.code;
        let table = sum.coset_table()?;
        let mut bad = None;
        'pairs: for l1 in &t1.leaders {
            for l2 in &t2.leaders {
                let u: Vec<Elem> = l1.iter().chain(l2).copied().collect();
                let k = table.coset_of(&sum, &u).expect("every vector has a coset");
                let w = sum.space().weight_raw(&u);
                if w != table.weights[k] {
                    bad = Some(json!({ "u1": l1, "u2": l2, "weight": w, "coset_weight": table.weights[k] }));
                    break 'pairs;
                }
            }
        }
        eval.claim(
            &format!("pairs of leaders are leaders ({})", order_name(order)),
            bad.is_none(),
            json!(bad),
        );
    }
    eval.value("pairs", t1.len() * t2.len());
    Ok(())
}

/// `C` read as a word set in another space of the same length.
fn as_set_in(code: &Code, space: &BlockSpace) -> Result<Code> {
    Code::explicit(space.clone(), code.codewords()?)
}

fn plotkin_mindist(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let (c1, c2) = (&codes[0], &codes[1]);
    let q_space = c2.space();
    let (d1, d2) = (min_distance(c1)?, min_distance(c2)?);
    let (w1, w2) = (c1.codewords()?, c2.codewords()?);
    let f = c1.field();
    let sums: BTreeSet<Vec<Elem>> = w1
        .iter()
        .flat_map(|a| w2.iter().map(move |b| a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()))
        .collect();
    let injective = sums.len() == w1.len() * w2.len();
    eval.value("d1", d1);
    eval.value("d2", d2);
    eval.value("sum_map_injective", injective);
    let dq1 = min_distance(&as_set_in(c1, q_space)?)?;
    let dq12 = min_distance(&Code::explicit(q_space.clone(), sums.into_iter().collect())?)?;
    let s = c1.space().s() as u32;
    let mw = c1.space().weight_fn().max_weight();

    let disjoint = min_distance(&plotkin_code(c1, c2, SumOrder::Disjoint)?.code)?;
    let linear = min_distance(&plotkin_code(c1, c2, SumOrder::Linear)?.code)?;
    eval.value("d_disjoint", disjoint);
    eval.value("d_linear", linear);
    let (Some(dd), Some(dl)) = (disjoint, linear) else {
        eval.skip("all", "the construction has a single word");
        return Ok(());
    };
    if let Some(lower) = min_opt([d1, d2]) {
        eval.claim("disjoint: d >= min{d(C1), d(C2)}", dd >= lower, json!({ "d": dd, "bound": lower }));
    }
    match d1 {
        Some(d1) => eval.claim("linear sum: d >= d(C1)", dl >= d1, json!({ "d": dl, "bound": d1 })),
        None => eval.skip("linear sum: d >= d(C1)", "C1 has a single word"),
    }
    if !injective {
        eval.skip("refined bounds", "a+b is not injective on C1 x C2");
        return Ok(());
    }
    let refined = min_opt([d2, d1.zip(dq1).map(|(a, b)| a + b), d1.zip(dq12).map(|(a, b)| a + b)]);
    if let Some(lower) = refined {
        eval.claim(
            "disjoint, injective sums: d >= min{d_Q(C2), d(C1)+d_Q(C1), d(C1)+d_Q(C1+C2)}",
            dd >= lower,
            json!({ "d": dd, "bound": lower }),
        );
    }
    if let Some(m) = min_opt([d2, dq1, dq12]) {
        eval.claim(
            "linear sum, injective sums: d = min{d_Q(C2), d_Q(C1), d_Q(C1+C2)} + s*M_w",
            dl == m + s * mw,
            json!({ "d": dl, "expected": m + s * mw }),
        );
    }
    Ok(())
}

fn plotkin_covering(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let (c1, c2) = (&codes[0], &codes[1]);
    let r1 = covering_radius(c1, eval)?;
    let r2 = covering_radius(c2, eval)?;
    let s = c1.space().s() as u32;
    let mw = c1.space().weight_fn().max_weight();
    let disjoint = covering_radius(&plotkin_code(c1, c2, SumOrder::Disjoint)?.code, eval)?;
    let linear = covering_radius(&plotkin_code(c1, c2, SumOrder::Linear)?.code, eval)?;
    eval.value("rho1", r1);
    eval.value("rho2", r2);
    eval.value("rho_disjoint", disjoint);
    eval.value("rho_linear", linear);
    eval.claim("disjoint: rho <= rho(C1)+rho(C2)", disjoint <= r1 + r2, json!({ "rho": disjoint, "bound": r1 + r2 }));
    eval.claim("linear sum: rho <= rho(C2)+s*M_w", linear <= r2 + s * mw, json!({ "rho": linear, "bound": r2 + s * mw }));
    Ok(())
}

fn extend_mindist(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let Some(d) = min_distance(code)? else {
        eval.skip("d <= d_ext <= d + M_w", "code has a single word");
        return Ok(());
    };
    let ext = min_distance(&extended_code(code)?.code)?.expect("extension keeps words distinct");
    let mw = code.space().weight_fn().max_weight();
    eval.value("d", d);
    eval.value("d_ext", ext);
    eval.claim("d <= d_ext <= d + M_w", d <= ext && ext <= d + mw, json!({ "d": d, "d_ext": ext, "M_w": mw }));
    Ok(())
}

fn extend_covering(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let rho = covering_radius(code, eval)?;
    let ext = covering_radius(&extended_code(code)?.code, eval)?;
    let mw = code.space().weight_fn().max_weight();
    eval.value("rho", rho);
    eval.value("rho_ext", ext);
    eval.claim("rho <= rho_ext <= rho + M_w", rho <= ext && ext <= rho + mw, json!({ "rho": rho, "rho_ext": ext, "M_w": mw }));
    Ok(())
}

fn punctured_vector(space: &BlockSpace, u: &[Elem], i: usize) -> Vec<Elem> {
    let range = space.labeling().range(i);
    u.iter().enumerate().filter(|(k, _)| !range.contains(k)).map(|(_, &x)| x).collect()
}

fn puncture_weight(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let space = codes[0].space();
    for i in 0..space.s() {
        let small = punctured_code(&codes[0], i)?.code.space().clone();
        let bad = space.vectors()?.find(|u| small.weight_raw(&punctured_vector(space, u, i)) > space.weight_raw(u));
        eval.claim(
            &format!("wt(u*) <= wt(u), block {}", i + 1),
            bad.is_none(),
            json!(bad.map(|u| json!({ "u": u }))),
        );
    }
    eval.value("blocks", space.s());
    Ok(())
}

fn puncture_mindist(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let Some(d) = min_distance(code)? else {
        eval.skip("d(C*) <= d(C)", "code has a single word");
        return Ok(());
    };
    eval.value("d", d);
    let mut per_block = Vec::new();
    for i in 0..code.space().s() {
        let punct = punctured_code(code, i)?.code;
        if punct.size() < code.size() {
            eval.skip(&format!("d(C*) <= d(C), block {}", i + 1), "puncturing merges codewords");
            per_block.push(None);
            continue;
        }
        let dp = punct.min_distance()?;
        per_block.push(Some(dp));
        eval.claim(&format!("d(C*) <= d(C), block {}", i + 1), dp <= d, json!({ "d": d, "d_punctured": dp }));
    }
    eval.value("d_punctured", per_block);
    Ok(())
}

fn puncture_covering(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let rho = covering_radius(code, eval)?;
    let mut per_block = Vec::new();
    for i in 0..code.space().s() {
        let rp = covering_radius(&punctured_code(code, i)?.code, eval)?;
        per_block.push(rp);
        eval.claim(&format!("rho(C*) <= rho(C), block {}", i + 1), rp <= rho, json!({ "rho": rho, "rho_punctured": rp }));
    }
    eval.value("rho", rho);
    eval.value("rho_punctured", per_block);
    Ok(())
}
