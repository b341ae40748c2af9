//! Minimum distance, packing radius, covering radius and coset leaders of a
//! single code.

use std::collections::HashSet;

use rand::Rng;
use serde_json::json;
use wpbm_core::{BlockSpace, Code, Field, Result};

use super::{covering_radius, hamming, min_distance, Check, Eval, Kind, Severity};
use crate::generate::{self, Envelope, Shape, TrialRng};

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            id: "packing-radius-chain",
            tags: &["packing", "chain"],
            statement: "linear code, chain P: rho >= (d_H-1)*M_w, with equality iff d_w = m_w + (d_H-1)*M_w",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: chain_code_nonzero, default_trials: 200 },
            evaluate: packing_chain,
        },
        Check {
            id: "packing-radius-balls",
            tags: &["packing"],
            statement: "packing radius equals the largest r with pairwise disjoint radius-r balls, and is below d",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: small_code, default_trials: 100 },
            evaluate: packing_balls,
        },
        Check {
            id: "chain-covering-radius",
            tags: &["chain-covering", "chain"],
            statement: "linear code, chain P, r = trailing full index: (r-1)*M_w < covering radius <= r*M_w; same with r = Hamming covering radius",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: chain_code_any_dim, default_trials: 200 },
            evaluate: chain_covering,
        },
        Check {
            id: "covering-vs-cosets",
            tags: &["cosets", "covering"],
            statement: "covering radius by full scan equals the heaviest coset leader; leaders are lightest in their cosets",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: any_linear_code, default_trials: 100 },
            evaluate: covering_vs_cosets,
        },
        Check {
            id: "mindist-linear-pairwise",
            tags: &["mindist"],
            statement: "for linear codes the least pairwise distance equals the least nonzero weight",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: any_linear_code, default_trials: 100 },
            evaluate: mindist_pairwise,
        },
    ]
}

pub(crate) fn random_space(
    rng: &mut TrialRng,
    env: &Envelope,
    q: u32,
    shape: Shape,
    min_s: usize,
    max_n: usize,
    max_space: u64,
) -> Result<BlockSpace> {
    let field = Field::new(q)?;
    let s = rng.gen_range(min_s..=env.max_s.min(max_n).max(min_s));
    let poset = generate::random_poset(rng, s, shape);
    let labeling = generate::random_labeling(rng, s, env.max_k, max_n);
    let weight = generate::random_weight(rng, &field);
    Ok(BlockSpace::new(poset, labeling, weight)?.with_max_space(max_space))
}

pub(crate) fn random_linear(rng: &mut TrialRng, env: &Envelope, space: &BlockSpace, min_dim: usize) -> Result<Code> {
    let dim = rng.gen_range(min_dim..=env.max_dim.min(space.n()).max(min_dim));
    generate::random_code(rng, space, dim)
}

fn chain_code(rng: &mut TrialRng, env: &Envelope, max_space: u64, min_dim: usize) -> Result<Vec<Code>> {
    let q = env.pick_q(rng);
    let max_n = env.max_n(q).min(env.max_s * env.max_k);
    let space = random_space(rng, env, q, Shape::Chain, 1, max_n, max_space)?;
    Ok(vec![random_linear(rng, env, &space, min_dim)?])
}

fn chain_code_nonzero(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    chain_code(rng, env, max_space, 1)
}

fn chain_code_any_dim(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    chain_code(rng, env, max_space, 0)
}

fn any_linear_code(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    let q = env.pick_q(rng);
    let max_n = env.max_n(q).min(env.max_s * env.max_k);
    let space = random_space(rng, env, q, Shape::Any, 1, max_n, max_space)?;
    Ok(vec![random_linear(rng, env, &space, 0)?])
}

/// Linear or nonlinear codes in spaces of at most a few hundred vectors.
fn small_code(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    let q = env.pick_q(rng);
    let small = Envelope { scan_budget: 729, ..env.clone() };
    let max_n = small.max_n(q).min(env.max_s * env.max_k).max(1);
    let space = random_space(rng, env, q, Shape::Any, 1, max_n, max_space)?;
    let code = if rng.gen_bool(0.5) {
        random_linear(rng, env, &space, 1)?
    } else {
        generate::random_word_set(rng, &space, 12)?
    };
    Ok(vec![code])
}

fn packing_chain(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let w = code.space().weight_fn();
    let (mw, mmin) = (w.max_weight(), w.min_weight());
    let rho = code.packing_radius()?;
    let d_h = hamming(code)?.min_distance()?;
    let d_w = code.min_distance()?;
    let bound = (d_h - 1) * mw;
    eval.value("rho", rho);
    eval.value("d_H", d_h);
    eval.value("d_w", d_w);
    eval.value("M_w", mw);
    eval.value("m_w", mmin);
    eval.claim("rho >= (d_H-1)*M_w", rho >= bound, json!({ "rho": rho, "bound": bound }));
    let lhs = rho == bound;
    let rhs = d_w == mmin + bound;
    eval.claim(
        "rho = (d_H-1)*M_w iff d_w = m_w + (d_H-1)*M_w",
        lhs == rhs,
        json!({ "rho_equals_bound": lhs, "d_w_equals_m_w_plus_bound": rhs, "rho": rho, "d_w": d_w, "bound": bound }),
    );
    Ok(())
}

fn packing_balls(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let space = code.space();
    let words = code.codewords()?;
    let rho = code.packing_radius()?;
    let d = code.min_distance()?;
    let balls = |r: u32| -> Result<Vec<HashSet<Vec<u8>>>> {
        words.iter().map(|c| Ok(space.ball(c, r)?.into_iter().collect())).collect()
    };
    let disjoint = |r: u32| -> Result<bool> {
        let bs = balls(r)?;
        Ok((0..bs.len()).all(|i| (i + 1..bs.len()).all(|j| bs[i].is_disjoint(&bs[j]))))
    };
    let mut largest = None;
    let mut r = 0;
    while disjoint(r)? {
        largest = Some(r);
        r += 1;
    }
    eval.value("rho", rho);
    eval.value("d", d);
    eval.value("largest_disjoint", largest);
    eval.claim("rho is the largest disjoint radius", largest == Some(rho), json!({ "rho": rho, "reference": largest }));
    eval.claim("rho < d", rho < d, json!({ "rho": rho, "d": d }));
    Ok(())
}

fn chain_covering(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let mw = code.space().weight_fn().max_weight() as i64;
    let rho = covering_radius(code, eval)? as i64;
    let r = code.trailing_full_index()? as i64;
    let r_h = covering_radius(&hamming(code)?, eval)? as i64;
    eval.value("covering_radius", rho);
    eval.value("r", r);
    eval.value("R_H", r_h);
    eval.value("M_w", mw);
    for (name, r) in [("trailing full index", r), ("Hamming covering radius", r_h)] {
        eval.claim(
            &format!("(r-1)*M_w < covering radius <= r*M_w, r = {name}"),
            (r - 1) * mw < rho && rho <= r * mw,
            json!({ "r": r, "covering_radius": rho, "M_w": mw }),
        );
    }
    Ok(())
}

fn covering_vs_cosets(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let space = code.space();
    let rho = covering_radius(code, eval)?;
    let table = code.coset_table()?;
    let k = code.dimension().expect("linear");
    let expected = (space.q() as u128).pow((space.n() - k) as u32);
    eval.value("covering_radius", rho);
    eval.value("cosets", table.len());
    eval.claim("q^(n-k) cosets", table.len() as u128 == expected, json!({ "cosets": table.len(), "expected": expected }));
    let words = code.codewords()?;
    let mut bad = None;
    for (leader, &w) in table.leaders.iter().zip(&table.weights) {
        let lightest = words.iter().map(|c| space.weight_raw(&space.add(leader, c))).min().unwrap_or(0);
        if lightest != w || space.weight_raw(leader) != w {
            bad = Some(json!({ "leader": leader, "weight": w, "lightest_in_coset": lightest }));
            break;
        }
    }
    eval.claim("every leader is a lightest coset member", bad.is_none(), json!(bad));
    Ok(())
}

fn mindist_pairwise(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let code = &codes[0];
    let Some(d) = min_distance(code)? else {
        eval.skip("least nonzero weight equals least pairwise distance", "code has one word");
        return Ok(());
    };
    let pairwise = code.min_distance_pairwise()?;
    eval.value("d", d);
    eval.claim("least nonzero weight equals least pairwise distance", d == pairwise, json!({ "weight": d, "pairwise": pairwise }));
    Ok(())
}
