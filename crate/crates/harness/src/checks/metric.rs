//! Metric axioms, the Hamming/Lee/poset-block/NRT reductions, and the ball
//! inclusion lemma for chains.

use rand::Rng;
use serde_json::json;
use wpbm_core::{BlockSpace, Code, Elem, Field, Labeling, Poset, Result, WeightFn, WeightKind};

use super::{Check, Eval, Kind, Severity};
use crate::generate::{self, Envelope, Shape, TrialRng};

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            id: "metric-axioms",
            tags: &["metric-axioms", "metric"],
            statement: "d is a metric: d(u,v)=0 iff u=v, d(u,v)=d(v,u), d(u,w)<=d(u,v)+d(v,w); 0<wt(u)<=s*M_w for u!=0",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Random { generate: random_space, default_trials: 100 },
            evaluate: metric_axioms,
        },
        Check {
            id: "metric-axioms-envelope",
            tags: &["metric-axioms-envelope", "metric", "exhaustive"],
            statement: "d is a metric on every space with q in {2,3}, s<=3, k_i<=2, Hamming or Lee weight",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Exhaustive { cases: envelope_spaces },
            evaluate: metric_axioms,
        },
        Check {
            id: "reductions",
            tags: &["reductions", "metric", "exhaustive"],
            statement: "the weight reduces to Hamming, Lee, poset-block and NRT block weight on their specializations",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Exhaustive { cases: reduction_spaces },
            evaluate: reductions,
        },
        Check {
            id: "ball-lemma",
            tags: &["ball-lemma", "lemma-ball", "metric", "exhaustive"],
            statement: "chain P, r=sigma+i*M_w with 1<=sigma<=M_w, i<=s-1: B_w(0,r) is inside B_H(0,i+1), equal iff sigma=M_w",
            severity: Severity::Hard,
            arity: 1,
            kind: Kind::Exhaustive { cases: ball_spaces },
            evaluate: ball_lemma,
        },
    ]
}

fn random_space(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    let q = env.pick_q(rng);
    let field = Field::new(q)?;
    let max_n = env.max_n(q).min(env.max_s * env.max_k);
    let s = rng.gen_range(1..=env.max_s.min(max_n));
    let poset = generate::random_poset(rng, s, Shape::Any);
    let labeling = generate::random_labeling(rng, s, env.max_k, max_n);
    let weight = generate::random_weight(rng, &field);
    let space = BlockSpace::new(poset, labeling, weight)?.with_max_space(max_space);
    Ok(vec![Code::zero(space)])
}

/// Every labeled poset on `s` points, each exactly once.
pub fn all_posets(s: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> =
        (0..s).flat_map(|i| (0..s).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            Poset::from_relation(s, |i, j| {
                i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask >> k & 1 == 1)
            })
        })
        .collect()
}

/// Every labeling of `s` blocks with sizes in `1..=max_k`.
pub fn all_labelings(s: usize, max_k: usize) -> Vec<Labeling> {
    let mut out = Vec::new();
    let mut sizes = vec![1; s];
    loop {
        out.push(Labeling::new(sizes.clone()).expect("positive sizes"));
        let Some(i) = sizes.iter().rposition(|&k| k < max_k) else { break };
        sizes[i] += 1;
        for k in &mut sizes[i + 1..] {
            *k = 1;
        }
    }
    out
}

fn spaces_for(
    qs: &[u32],
    posets: impl Fn(usize) -> Vec<Poset>,
    weights: impl Fn(&Field) -> Vec<WeightFn>,
    max_s: usize,
    max_k: usize,
    max_size: u64,
    max_space: u64,
) -> Result<Vec<Vec<Code>>> {
    let mut out = Vec::new();
    for &q in qs {
        let field = Field::new(q)?;
        for w in weights(&field) {
            for s in 1..=max_s {
                for poset in posets(s) {
                    for lab in all_labelings(s, max_k) {
                        let space = BlockSpace::new(poset.clone(), lab, w.clone())?
                            .with_max_space(max_space);
                        if space.space_size() <= max_size as u128 {
                            out.push(vec![Code::zero(space)]);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn hamming_and_lee(f: &Field) -> Vec<WeightFn> {
    let mut ws = vec![WeightFn::hamming(f)];
    if f.is_prime() {
        ws.push(WeightFn::lee(f).expect("prime field"));
    }
    ws
}

fn envelope_qs(env: &Envelope, default: &[u32]) -> Vec<u32> {
    if env.qs == Envelope::default().qs {
        default.to_vec()
    } else {
        env.qs.clone()
    }
}

fn envelope_spaces(env: &Envelope, max_space: u64) -> Result<Vec<Vec<Code>>> {
    let qs = envelope_qs(env, &[2, 3]);
    spaces_for(&qs, all_posets, hamming_and_lee, 3, 2, max_space, max_space)
}

fn reduction_spaces(env: &Envelope, max_space: u64) -> Result<Vec<Vec<Code>>> {
    let qs = env.qs.clone();
    let mut out = spaces_for(&qs, all_posets, |f| vec![WeightFn::hamming(f)], 3, 2, 1 << 10, max_space)?;
    let antichains = |s| vec![Poset::antichain(s)];
    out.extend(spaces_for(&qs, antichains, hamming_and_lee, 10, 1, 1 << 10, max_space)?);
    let chains = |s| vec![Poset::chain(s)];
    out.extend(spaces_for(&qs, chains, |f| vec![WeightFn::hamming(f)], 5, 2, 1 << 10, max_space)?);
    Ok(out)
}

fn ball_spaces(env: &Envelope, max_space: u64) -> Result<Vec<Vec<Code>>> {
    let qs: Vec<u32> = envelope_qs(env, &[5]).into_iter().filter(|&q| wpbm_core::field::is_prime(q)).collect();
    let lee = |f: &Field| vec![WeightFn::lee(f).expect("prime field")];
    spaces_for(&qs, |s| vec![Poset::chain(s)], lee, 3, 2, max_space, max_space)
}

fn all_vectors(space: &BlockSpace) -> Result<Vec<Vec<Elem>>> {
    Ok(space.vectors()?.collect())
}

fn metric_axioms(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let space = codes[0].space();
    let vs = all_vectors(space)?;
    let weights: Vec<u32> = vs.iter().map(|v| space.weight_raw(v)).collect();
    let bound = space.s() as u32 * space.weight_fn().max_weight();
    eval.value("vectors", vs.len());

    let bad_weight = vs.iter().zip(&weights).find(|(v, &w)| {
        let zero = v.iter().all(|&x| x == 0);
        (w == 0) != zero || w > bound || weights[space.index_of(&space.neg(v)) as usize] != w
    });
    eval.claim(
        "weight is definite, symmetric under negation and at most s*M_w",
        bad_weight.is_none(),
        json!({ "vector": bad_weight.map(|(v, _)| v), "bound": bound }),
    );

    if vs.len() <= 81 {
        let d = |a: usize, b: usize| space.distance_raw(&vs[a], &vs[b]);
        let mut witness = None;
        'outer: for x in 0..vs.len() {
            for y in 0..vs.len() {
                let dxy = d(x, y);
                if (dxy == 0) != (x == y) || dxy != d(y, x) {
                    witness = Some(json!({ "u": vs[x], "v": vs[y] }));
                    break 'outer;
                }
                for z in 0..vs.len() {
                    if d(x, z) > dxy + d(y, z) {
                        witness = Some(json!({ "u": vs[x], "v": vs[y], "w": vs[z] }));
                        break 'outer;
                    }
                }
            }
        }
        eval.value("scan", "all triples");
        eval.claim("metric axioms on all triples", witness.is_none(), json!(witness));
    } else {
        // d(u, v) = wt(u - v), so the triangle inequality on all triples is
        // wt(a + b) <= wt(a) + wt(b) on all pairs.
        let mut witness = None;
        let mut sum = vec![0 as Elem; space.n()];
        let f = space.field();
        'pairs: for (a, va) in vs.iter().enumerate() {
            for (b, vb) in vs.iter().enumerate().skip(a) {
                for (s, (&x, &y)) in sum.iter_mut().zip(va.iter().zip(vb)) {
                    *s = f.add(x, y);
                }
                if weights[space.index_of(&sum) as usize] > weights[a] + weights[b] {
                    witness = Some(json!({ "a": va, "b": vb }));
                    break 'pairs;
                }
            }
        }
        eval.value("scan", "all pairs, translation reduced");
        eval.claim("wt(a+b) <= wt(a)+wt(b) on all pairs", witness.is_none(), json!(witness));
        let mut rng = generate::rng(vs.len() as u64);
        let mut witness = None;
        for _ in 0..2000 {
            let [x, y, z] = [0; 3].map(|_| rng.gen_range(0..vs.len()));
            let (dxy, dyz, dxz) = (
                space.distance(&vs[x], &vs[y])?,
                space.distance(&vs[y], &vs[z])?,
                space.distance(&vs[x], &vs[z])?,
            );
            if dxz > dxy + dyz || dxy != space.distance(&vs[y], &vs[x])? || (dxy == 0) != (x == y) {
                witness = Some(json!({ "u": vs[x], "v": vs[y], "w": vs[z] }));
                break;
            }
        }
        eval.claim("metric axioms on sampled triples", witness.is_none(), json!(witness));
    }
    Ok(())
}

/// Independently coded reference weights for the classical specializations.
mod oracle {
    use super::*;

    pub fn hamming(v: &[Elem]) -> u32 {
        v.iter().filter(|&&x| x != 0).count() as u32
    }

    pub fn lee(p: u32, v: &[Elem]) -> u32 {
        v.iter().map(|&x| (x as u32).min(p - x as u32)).sum()
    }

    fn nonzero_blocks(space: &BlockSpace, v: &[Elem]) -> Vec<usize> {
        (0..space.s()).filter(|&i| space.block(v, i).iter().any(|&x| x != 0)).collect()
    }

    /// Hamming poset-block weight: the size of the ideal generated by the support.
    pub fn poset_block(space: &BlockSpace, v: &[Elem]) -> u32 {
        let support = nonzero_blocks(space, v);
        let p = space.poset();
        (0..p.len()).filter(|&j| support.iter().any(|&i| p.leq(j, i))).count() as u32
    }

    /// NRT block weight on the chain 1 < .. < s: the highest nonzero block.
    pub fn nrt(space: &BlockSpace, v: &[Elem]) -> u32 {
        nonzero_blocks(space, v).last().map_or(0, |&i| i as u32 + 1)
    }
}

fn reductions(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let space = codes[0].space();
    let kind = space.weight_fn().kind();
    let poset = space.poset();
    let trivial = space.labeling().is_trivial();
    let mut applied = Vec::new();
    let mut check = |name: &'static str, oracle: &dyn Fn(&[Elem]) -> u32| -> Result<()> {
        applied.push(name);
        let bad = space.vectors()?.find(|v| space.weight_raw(v) != oracle(v));
        let detail = bad.map(|v| json!({ "vector": v, "weight": space.weight_raw(&v), "reference": oracle(&v) }));
        eval.claim(name, detail.is_none(), json!(detail));
        Ok(())
    };
    if kind == WeightKind::Hamming {
        check("poset-block weight is the size of the support ideal", &|v| oracle::poset_block(space, v))?;
        if poset.is_chain() && (0..poset.len().saturating_sub(1)).all(|i| poset.lt(i, i + 1)) {
            check("chain with Hamming weight gives the NRT block weight", &|v| oracle::nrt(space, v))?;
        }
        if poset.is_antichain() && trivial {
            check("antichain, unit blocks, Hamming weight gives Hamming weight", &oracle::hamming)?;
        }
    }
    if kind == WeightKind::Lee && poset.is_antichain() && trivial {
        let p = space.q() as u32;
        check("antichain, unit blocks, Lee weight gives Lee weight", &|v| oracle::lee(p, v))?;
    }
    eval.value("reductions", applied);
    Ok(())
}

fn ball_lemma(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let space = codes[0].space();
    let ham = space.hamming();
    let mw = space.weight_fn().max_weight();
    let vs = all_vectors(space)?;
    let w: Vec<u32> = vs.iter().map(|v| space.weight_raw(v)).collect();
    let h: Vec<u32> = vs.iter().map(|v| ham.weight_raw(v)).collect();
    let mut radii = 0;
    for i in 0..space.s() as u32 {
        for sigma in 1..=mw {
            radii += 1;
            let r = sigma + i * mw;
            let outside = (0..vs.len()).find(|&k| w[k] <= r && h[k] > i + 1);
            eval.claim(
                "ball inclusion",
                outside.is_none(),
                json!({ "sigma": sigma, "i": i, "r": r, "vector": outside.map(|k| &vs[k]) }),
            );
            let equal = (0..vs.len()).all(|k| (w[k] <= r) == (h[k] <= i + 1));
            eval.claim(
                "balls equal iff sigma = M_w",
                equal == (sigma == mw),
                json!({ "sigma": sigma, "i": i, "r": r, "equal": equal }),
            );
        }
    }
    eval.value("radii", radii);
    eval.value("M_w", mw);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        assert_eq!(all_posets(1).len(), 1);
        assert_eq!(all_posets(2).len(), 3);
        assert_eq!(all_posets(3).len(), 19);
    }

    #[test]
    fn labeling_counts() {
        assert_eq!(all_labelings(3, 2).len(), 8);
        assert_eq!(all_labelings(2, 3).len(), 9);
    }

    #[test]
    fn lee_ball_example() {
        let f = Field::new(5).unwrap();
        let space =
            BlockSpace::new(Poset::chain(2), Labeling::trivial(2), WeightFn::lee(&f).unwrap()).unwrap();
        let mut eval = Eval::default();
        ball_lemma(&[Code::zero(space)], &mut eval).unwrap();
        assert!(eval.violations.is_empty(), "{:?}", eval.violations);
        assert_eq!(eval.claims, 8);
    }
}
