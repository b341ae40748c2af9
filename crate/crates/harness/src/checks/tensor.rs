//! Tensor product codes over the cartesian and lexicographic products.
//!
//! Distances of `C1 ⊗ C2` are the least pairwise distance of the explicit word
//! set `{u ⊗ v}`; the least nonzero weight is recorded alongside.

use rand::Rng;
use serde_json::json;
use wpbm_core::constructions::{tensor_code, tensor_vector};
use wpbm_core::{BlockSpace, Code, Field, Labeling, ProductOrder, Result, WeightFn, WeightKind};

use super::{covering_radius, hamming, min_distance, Check, Eval, Kind, Severity};
use crate::generate::{self, Envelope, Shape, TrialRng};

use Shape::{Antichain, Any, Chain};

const LEE_QS: [u32; 3] = [3, 5, 7];

fn check(
    id: &'static str,
    statement: &'static str,
    tags: &'static [&'static str],
    severity: Severity,
    generate: super::Generate,
    evaluate: super::Evaluate,
) -> Check {
    Check { id, tags, statement, severity, arity: 2, kind: Kind::Random { generate, default_trials: 100 }, evaluate }
}

pub fn checks() -> Vec<Check> {
    use Severity::{Hard, Soft};
    vec![
        check(
            "tensor-covering-lower",
            "tensor of linear codes, cartesian and lex products: covering radius >= max{s*rho(C2), t*rho(C1)}",
            &["tensor", "covering"],
            Hard,
            gen_any_scan,
            covering_lower,
        ),
        check(
            "tensor-chain-weight",
            "cartesian product of chains: wt(u⊗v) = W_{λδ} + (λδ-1)*M_w with λ, δ the NRT weights of u, v",
            &["tensor"],
            Hard,
            gen_chains_wide,
            chain_weight,
        ),
        check(
            "tensor-cartesian-chain-antichain",
            "cartesian, P chain, Q antichain: d_Q(C2)(d_P(C1)-1)M_w + d_w(C2) <= d <= d_P(C1)d_Q(C2)M_w",
            &["tensor", "tensor-distance"],
            Soft,
            gen_chain_antichain,
            car_chain_antichain,
        ),
        check(
            "tensor-cartesian-antichains",
            "cartesian, P and Q antichains: d_P(C1)d_Q(C2)m_w <= d <= d_P(C1)d_Q(C2)M_w",
            &["tensor", "tensor-distance"],
            Soft,
            gen_antichains,
            car_antichains,
        ),
        check(
            "tensor-cartesian-chains",
            "cartesian, P and Q chains: (d_P(C1)d_Q(C2)-1)M_w + m_w <= d <= d_P(C1)d_Q(C2)M_w",
            &["tensor", "tensor-distance"],
            Soft,
            gen_chains,
            car_chains,
        ),
        check(
            "tensor-cartesian-chains-trivial",
            "cartesian, chains, trivial labelings: d = (d_P d_Q - 1)M_w + m_w = (d_w(C1)-m_w)d_Q(C2) + d_w(C2) = (d_w(C2)-m_w)d_P(C1) + d_w(C1)",
            &["tensor", "tensor-distance"],
            Soft,
            gen_chains_trivial,
            car_chains_trivial,
        ),
        check(
            "tensor-lee",
            "cartesian, Lee weight over a prime field, trivial labelings: the antichain, chain-antichain and chain cases with M_w = floor(m/2), m_w = 1",
            &["tensor", "tensor-distance", "lee"],
            Soft,
            gen_lee,
            lee_corollary,
        ),
        check(
            "tensor-lex-chain-antichain",
            "lex, P chain, Q antichain: (d_P(C1)-1)tM_w + d_w(C2) <= d <= (d_P(C1)-1)tM_w + d_Q(C2)M_w",
            &["tensor", "tensor-distance", "lex"],
            Soft,
            gen_chain_antichain,
            lex_chain_antichain,
        ),
        check(
            "tensor-lex-chains",
            "lex, P and Q chains: m_w + (d_P(C1)-1)tM_w + (d_Q(C2)-1)M_w <= d <= (d_P(C1)-1)tM_w + d_Q(C2)M_w",
            &["tensor", "tensor-distance", "lex"],
            Soft,
            gen_chains,
            lex_chains,
        ),
        check(
            "tensor-lex-antichains",
            "lex, P and Q antichains: d_P(C1)d_Q(C2)m_w <= d <= d_P(C1)d_Q(C2)M_w",
            &["tensor", "tensor-distance", "lex"],
            Soft,
            gen_antichains,
            lex_antichains,
        ),
        check(
            "tensor-lex-antichain-chain",
            "lex, P antichain, Q chain: d_w(C1) + d_P(C1)(d_Q(C2)-1)M_w <= d <= d_P(C1)d_Q(C2)M_w",
            &["tensor", "tensor-distance", "lex"],
            Soft,
            gen_antichain_chain,
            lex_antichain_chain,
        ),
        check(
            "tensor-lex-trivial",
            "lex, trivial labelings: P chain, Q antichain gives d = (d_P-1)tM_w + d_w(C2) = (d_w(C1)-m_w)t + d_w(C2); P, Q chains give d = m_w + (d_P-1)tM_w + (d_Q-1)M_w = (d_w(C1)-m_w)t + d_w(C2)",
            &["tensor", "tensor-distance", "lex"],
            Soft,
            gen_chain_any_trivial,
            lex_trivial,
        ),
        check(
            "tensor-cartesian-covering-chain-antichain",
            "cartesian, P chain, Q antichain: (a) rho = stM_w if D_P(C1) < s; (b) rho >= R2(s-1)M_w + R2*m_w; (c) rho <= (s-1)tM_w + rho(C2) if D_P(C1) = s and alpha_s = 1",
            &["tensor", "covering"],
            Soft,
            gen_chain_antichain_scan,
            cartesian_covering_chain_antichain,
        ),
        check(
            "tensor-cartesian-covering-chains",
            "cartesian, chains: (a) rho = stM_w if D_P < s or D_Q < t; with D_P = s, D_Q = t: (b) rho <= (s-1)tM_w + rho(C2) if alpha_s = 1, (c) rho <= (t-1)sM_w + rho(C1) if beta_t = 1, (d) the minimum of both if both; (e) rho >= max{(sR2-1)M_w + m_w, (tR1-1)M_w + m_w}",
            &["tensor", "covering"],
            Soft,
            gen_chains_scan,
            cartesian_covering_chains,
        ),
        check(
            "tensor-lex-covering-chain",
            "lex, P chain: (a) rho = stM_w if D_P < s, or if Q is a chain and D_Q < t; (b) rho <= (s-1)tM_w + rho(C2) if D_P = s, D_Q = t, alpha_s = 1; (c) rho >= max{(s-1)tM_w + rho(C2), t*rho(C1)}",
            &["tensor", "covering", "lex"],
            Soft,
            gen_chain_any_scan,
            lex_covering_chain,
        ),
        check(
            "tensor-lex-covering-antichain-chain",
            "lex, P antichain, Q chain: (a) rho = stM_w if D_Q < t; (b) rho <= (t-1)sM_w + rho(C1) if D_Q = t and beta_t = 1",
            &["tensor", "covering", "lex"],
            Soft,
            gen_antichain_chain_scan,
            lex_covering_antichain_chain,
        ),
    ]
}

#[derive(Clone, Copy)]
struct PairSpec {
    p: Shape,
    q: Shape,
    trivial: bool,
    lee: bool,
    /// Bound on `q^(n1 n2)` when the tensor space gets scanned.
    scan: Option<u64>,
    /// Bound on `|C1|` and `|C2|`.
    words: u64,
}

const DIST: PairSpec = PairSpec { p: Any, q: Any, trivial: false, lee: false, scan: None, words: 27 };
const SCAN: PairSpec = PairSpec { scan: Some(1 << 12), words: 16, ..DIST };

macro_rules! generator {
    ($name:ident, $spec:expr) => {
        fn $name(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
            tensor_pair(rng, env, max_space, &$spec)
        }
    };
}

generator!(gen_any_scan, SCAN);
generator!(gen_chains_wide, PairSpec { p: Chain, q: Chain, words: 64, ..DIST });
generator!(gen_chain_antichain, PairSpec { p: Chain, q: Antichain, ..DIST });
generator!(gen_antichain_chain, PairSpec { p: Antichain, q: Chain, ..DIST });
generator!(gen_antichains, PairSpec { p: Antichain, q: Antichain, ..DIST });
generator!(gen_chains, PairSpec { p: Chain, q: Chain, ..DIST });
generator!(gen_chains_trivial, PairSpec { p: Chain, q: Chain, trivial: true, ..DIST });
generator!(gen_chain_antichain_scan, PairSpec { p: Chain, q: Antichain, ..SCAN });
generator!(gen_chains_scan, PairSpec { p: Chain, q: Chain, ..SCAN });
generator!(gen_chain_any_scan, PairSpec { p: Chain, ..SCAN });
generator!(gen_antichain_chain_scan, PairSpec { p: Antichain, q: Chain, ..SCAN });

fn gen_chain_any_trivial(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    let q = if rng.gen_bool(0.5) { Chain } else { Antichain };
    tensor_pair(rng, env, max_space, &PairSpec { p: Chain, q, trivial: true, ..DIST })
}

fn gen_lee(rng: &mut TrialRng, env: &Envelope, max_space: u64) -> Result<Vec<Code>> {
    let (p, q) = [(Antichain, Antichain), (Chain, Antichain), (Chain, Chain)][rng.gen_range(0..3)];
    tensor_pair(rng, env, max_space, &PairSpec { p, q, trivial: true, lee: true, ..DIST })
}

fn largest_dim(q: u32, n: usize, words: u64) -> usize {
    let mut d = 0;
    while d < n && (q as u64).pow(d as u32 + 1) <= words {
        d += 1;
    }
    d
}

fn labeling(rng: &mut TrialRng, poset: &wpbm_core::Poset, trivial: bool, max_k: usize) -> Labeling {
    let s = poset.len();
    if trivial {
        return Labeling::trivial(s);
    }
    let mut sizes: Vec<usize> = (0..s).map(|_| rng.gen_range(1..=max_k)).collect();
    if let (Ok(order), true) = (poset.chain_order(), rng.gen_bool(0.5)) {
        sizes[*order.last().expect("nonempty")] = 1;
    }
    Labeling::new(sizes).expect("positive sizes")
}

/// A random linear code, for chains sometimes confined below the top block.
fn tensor_factor(rng: &mut TrialRng, space: &BlockSpace, words: u64) -> Result<Code> {
    let max = largest_dim(space.q() as u32, space.n(), words).max(1);
    let dim = rng.gen_range(1..=max);
    let code = generate::random_code(rng, space, dim)?;
    let Ok(order) = space.poset().chain_order() else { return Ok(code) };
    if space.s() < 2 || !rng.gen_bool(0.3) {
        return Ok(code);
    }
    let top = space.labeling().range(*order.last().expect("nonempty"));
    let rows = code
        .basis()
        .expect("linear")
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r[top.clone()].fill(0);
            r
        })
        .collect();
    let cut = Code::linear(space.clone(), rows)?;
    Ok(if cut.dimension() == Some(0) { code } else { cut })
}

fn tensor_pair(rng: &mut TrialRng, env: &Envelope, max_space: u64, spec: &PairSpec) -> Result<Vec<Code>> {
    let q = if spec.lee {
        let qs: Vec<u32> = env.qs.iter().copied().filter(|q| LEE_QS.contains(q)).collect();
        let qs = if qs.is_empty() { LEE_QS.to_vec() } else { qs };
        qs[rng.gen_range(0..qs.len())]
    } else {
        env.pick_q(rng)
    };
    let field = Field::new(q)?;
    let weight = if spec.lee { WeightFn::lee(&field)? } else { generate::random_weight(rng, &field) };
    let (p1, l1, p2, l2) = loop {
        let (s, t) = (rng.gen_range(1..=env.max_s), rng.gen_range(1..=env.max_s));
        let p1 = generate::random_poset(rng, s, spec.p);
        let p2 = generate::random_poset(rng, t, spec.q);
        let l1 = labeling(rng, &p1, spec.trivial, env.max_k);
        let l2 = labeling(rng, &p2, spec.trivial, env.max_k);
        let n = (l1.len() * l2.len()) as u32;
        let fits = spec.scan.is_none_or(|b| (q as u64).checked_pow(n).is_some_and(|x| x <= b));
        if fits {
            break (p1, l1, p2, l2);
        }
    };
    let a = BlockSpace::new(p1, l1, weight.clone())?.with_max_space(max_space);
    let b = BlockSpace::new(p2, l2, weight)?.with_max_space(max_space);
    Ok(vec![tensor_factor(rng, &a, spec.words)?, tensor_factor(rng, &b, spec.words)?])
}

fn fits(code: &Code, shape: Shape) -> bool {
    match shape {
        Chain => code.space().poset().is_chain(),
        Antichain => code.space().poset().is_antichain(),
        Any => true,
    }
}

/// Records a skip unless the two posets have the required shapes.
fn shapes(codes: &[Code], p: Shape, q: Shape, eval: &mut Eval) -> bool {
    let ok = fits(&codes[0], p) && fits(&codes[1], q) && codes.iter().all(Code::is_linear);
    if !ok {
        eval.skip("all", "posets do not have the required shapes, or a code is not linear");
    }
    ok
}

/// Size of the top block of a chain.
fn top_size(space: &BlockSpace) -> Result<usize> {
    let order = space.poset().chain_order()?;
    Ok(space.labeling().sizes()[*order.last().expect("nonempty")])
}

struct Common {
    s: u32,
    t: u32,
    mw: u32,
    mmin: u32,
}

fn common(codes: &[Code], eval: &mut Eval) -> Common {
    let w = codes[0].space().weight_fn();
    let c = Common { s: codes[0].space().s() as u32, t: codes[1].space().s() as u32, mw: w.max_weight(), mmin: w.min_weight() };
    eval.value("s", c.s);
    eval.value("t", c.t);
    eval.value("M_w", c.mw);
    eval.value("m_w", c.mmin);
    c
}

struct Dist {
    /// Poset block distances (Hamming coordinate weight).
    dp: u32,
    dq: u32,
    dw1: u32,
    dw2: u32,
    d: u32,
}

fn distances(codes: &[Code], order: ProductOrder, eval: &mut Eval) -> Result<Option<Dist>> {
    let (c1, c2) = (&codes[0], &codes[1]);
    let tensor = tensor_code(c1, c2, order, false)?.code;
    let (Some(dw1), Some(dw2), Some(d)) = (min_distance(c1)?, min_distance(c2)?, min_distance(&tensor)?) else {
        eval.skip("all", "a code has a single word");
        return Ok(None);
    };
    let dp = hamming(c1)?.min_distance()?;
    let dq = hamming(c2)?.min_distance()?;
    eval.value("d_P", dp);
    eval.value("d_Q", dq);
    eval.value("d_w1", dw1);
    eval.value("d_w2", dw2);
    eval.value("d", d);
    eval.value("tensor_words", tensor.size() as u64);
    eval.value("tensor_min_weight", tensor.min_nonzero_weight()?);
    Ok(Some(Dist { dp, dq, dw1, dw2, d }))
}

fn between(eval: &mut Eval, name: &str, lo: i64, x: u32, hi: i64) {
    let x = x as i64;
    eval.claim(name, lo <= x && x <= hi, json!({ "lower": lo, "value": x, "upper": hi }));
}

fn at_least(eval: &mut Eval, name: &str, x: u32, lo: i64) {
    eval.claim(name, x as i64 >= lo, json!({ "value": x, "lower": lo }));
}

fn at_most(eval: &mut Eval, name: &str, x: u32, hi: i64) {
    eval.claim(name, x as i64 <= hi, json!({ "value": x, "upper": hi }));
}

fn equal(eval: &mut Eval, name: &str, x: u32, expected: i64) {
    eval.claim(name, x as i64 == expected, json!({ "value": x, "expected": expected }));
}

fn covering_lower(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !codes.iter().all(Code::is_linear) {
        eval.skip("all", "a code is not linear");
        return Ok(());
    }
    let c = common(codes, eval);
    let r1 = covering_radius(&codes[0], eval)?;
    let r2 = covering_radius(&codes[1], eval)?;
    eval.value("rho1", r1);
    eval.value("rho2", r2);
    let lower = (c.s * r2).max(c.t * r1) as i64;
    for order in [ProductOrder::Cartesian, ProductOrder::Lex] {
        let rho = tensor_code(&codes[0], &codes[1], order, false)?.code.covering_radius()?;
        eval.value(&format!("rho_{order}"), rho);
        at_least(eval, &format!("{order}: rho >= max{{s*rho(C2), t*rho(C1)}}"), rho, lower);
    }
    Ok(())
}

fn chain_weight(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Chain, eval) {
        return Ok(());
    }
    let (c1, c2) = (&codes[0], &codes[1]);
    let (a, b) = (c1.space(), c2.space());
    let (ha, hb) = (a.hamming(), b.hamming());
    let (oa, ob) = (a.poset().chain_order()?, b.poset().chain_order()?);
    let product = tensor_code(&Code::zero(a.clone()), &Code::zero(b.clone()), ProductOrder::Cartesian, false)?.code;
    let space = product.space();
    let w = a.weight_fn();
    let mw = w.max_weight() as i64;
    let t = b.s();
    let mut bad = None;
    let mut pairs = 0u64;
    'outer: for u in c1.codewords()?.iter().filter(|u| u.iter().any(|&x| x != 0)) {
        let lambda = ha.weight_raw(u) as usize;
        let top_u = a.block(u, oa[lambda - 1]);
        for v in c2.codewords()?.iter().filter(|v| v.iter().any(|&x| x != 0)) {
            pairs += 1;
            let delta = hb.weight_raw(v) as usize;
            let top_v = b.block(v, ob[delta - 1]);
            let f = a.field();
            let big_w = top_u.iter().flat_map(|&x| top_v.iter().map(move |&y| w.of(f.mul(x, y)))).max().unwrap_or(0) as i64;
            let expected = big_w + (lambda * delta) as i64 * mw - mw;
            let uv = tensor_vector(a, u, b, v)?;
            let got = space.weight_raw(&uv) as i64;
            if got != expected {
                bad = Some(json!({ "u": u, "v": v, "weight": got, "expected": expected, "lambda": lambda, "delta": delta, "t": t }));
                break 'outer;
            }
        }
    }
    eval.value("pairs", pairs);
    eval.claim("wt(u⊗v) = W_{λδ} + (λδ-1)M_w", bad.is_none(), json!(bad));
    Ok(())
}

fn car_chain_antichain(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Antichain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Cartesian, eval)? else { return Ok(()) };
    let lo = (x.dq * (x.dp - 1) * c.mw + x.dw2) as i64;
    between(eval, "d_Q(C2)(d_P(C1)-1)M_w + d_w(C2) <= d <= d_P(C1)d_Q(C2)M_w", lo, x.d, (x.dp * x.dq * c.mw) as i64);
    Ok(())
}

fn car_antichains(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Antichain, Antichain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Cartesian, eval)? else { return Ok(()) };
    let pq = x.dp * x.dq;
    between(eval, "d_P d_Q m_w <= d <= d_P d_Q M_w", (pq * c.mmin) as i64, x.d, (pq * c.mw) as i64);
    Ok(())
}

fn car_chains(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Chain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Cartesian, eval)? else { return Ok(()) };
    let pq = x.dp * x.dq;
    between(eval, "(d_P d_Q - 1)M_w + m_w <= d <= d_P d_Q M_w", ((pq - 1) * c.mw + c.mmin) as i64, x.d, (pq * c.mw) as i64);
    Ok(())
}

fn trivial_labelings(codes: &[Code], eval: &mut Eval) -> bool {
    let ok = codes.iter().all(|c| c.space().labeling().is_trivial());
    if !ok {
        eval.skip("all", "labelings are not trivial");
    }
    ok
}

fn car_chains_trivial(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Chain, eval) || !trivial_labelings(codes, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Cartesian, eval)? else { return Ok(()) };
    let (mw, mm) = (c.mw as i64, c.mmin as i64);
    let (dp, dq, dw1, dw2) = (x.dp as i64, x.dq as i64, x.dw1 as i64, x.dw2 as i64);
    equal(eval, "d = (d_P d_Q - 1)M_w + m_w", x.d, (dp * dq - 1) * mw + mm);
    equal(eval, "d = (d_w(C1)-m_w)d_Q + d_w(C2)", x.d, (dw1 - mm) * dq + dw2);
    equal(eval, "d = (d_w(C2)-m_w)d_P + d_w(C1)", x.d, (dw2 - mm) * dp + dw1);
    Ok(())
}

fn lee_corollary(codes: &[Code], eval: &mut Eval) -> Result<()> {
    let space = codes[0].space();
    if space.weight_fn().kind() != WeightKind::Lee || !trivial_labelings(codes, eval) || !codes.iter().all(Code::is_linear) {
        eval.skip("all", "needs Lee weight, trivial labelings and linear codes");
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Cartesian, eval)? else { return Ok(()) };
    let half = (space.q() / 2) as u32;
    let (p, q) = (codes[0].space().poset(), codes[1].space().poset());
    let mut any = false;
    if p.is_antichain() && q.is_antichain() {
        any = true;
        between(eval, "antichains: d_P d_Q <= d <= d_P d_Q floor(m/2)", (x.dp * x.dq) as i64, x.d, (x.dp * x.dq * half) as i64);
    }
    if p.is_chain() && q.is_antichain() {
        any = true;
        let lo = (x.dq * (x.dp - 1) * half + x.dw2) as i64;
        between(eval, "chain, antichain: d_Q(d_P-1)floor(m/2) + d_w(C2) <= d <= d_P d_Q floor(m/2)", lo, x.d, (x.dp * x.dq * half) as i64);
    }
    if p.is_chain() && q.is_chain() {
        any = true;
        let (dp, dq, dw1, dw2) = (x.dp as i64, x.dq as i64, x.dw1 as i64, x.dw2 as i64);
        equal(eval, "chains: d = (d_w(C1)-1)d_Q + d_w(C2)", x.d, (dw1 - 1) * dq + dw2);
        equal(eval, "chains: d = (d_w(C2)-1)d_P + d_w(C1)", x.d, (dw2 - 1) * dp + dw1);
    }
    if !any {
        eval.skip("all", "posets are neither chains nor antichains in a covered combination");
    }
    eval.value("M_w_is_half_m", c.mw == half);
    Ok(())
}

fn lex_chain_antichain(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Antichain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Lex, eval)? else { return Ok(()) };
    let base = ((x.dp - 1) * c.t * c.mw) as i64;
    between(eval, "(d_P-1)tM_w + d_w(C2) <= d <= (d_P-1)tM_w + d_Q M_w", base + x.dw2 as i64, x.d, base + (x.dq * c.mw) as i64);
    Ok(())
}

fn lex_chains(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Chain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Lex, eval)? else { return Ok(()) };
    let base = ((x.dp - 1) * c.t * c.mw) as i64;
    let lo = c.mmin as i64 + base + ((x.dq - 1) * c.mw) as i64;
    between(eval, "m_w + (d_P-1)tM_w + (d_Q-1)M_w <= d <= (d_P-1)tM_w + d_Q M_w", lo, x.d, base + (x.dq * c.mw) as i64);
    Ok(())
}

fn lex_antichains(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Antichain, Antichain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Lex, eval)? else { return Ok(()) };
    let pq = x.dp * x.dq;
    between(eval, "d_P d_Q m_w <= d <= d_P d_Q M_w", (pq * c.mmin) as i64, x.d, (pq * c.mw) as i64);
    Ok(())
}

fn lex_antichain_chain(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Antichain, Chain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Lex, eval)? else { return Ok(()) };
    let lo = (x.dw1 + x.dp * (x.dq - 1) * c.mw) as i64;
    between(eval, "d_w(C1) + d_P(d_Q-1)M_w <= d <= d_P d_Q M_w", lo, x.d, (x.dp * x.dq * c.mw) as i64);
    Ok(())
}

fn lex_trivial(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Any, eval) || !trivial_labelings(codes, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let Some(x) = distances(codes, ProductOrder::Lex, eval)? else { return Ok(()) };
    let (t, mw, mm) = (c.t as i64, c.mw as i64, c.mmin as i64);
    let (dp, dq, dw1, dw2) = (x.dp as i64, x.dq as i64, x.dw1 as i64, x.dw2 as i64);
    let q = codes[1].space().poset();
    let shared = (dw1 - mm) * t + dw2;
    if q.is_antichain() {
        equal(eval, "chain, antichain: d = (d_P-1)tM_w + d_w(C2)", x.d, (dp - 1) * t * mw + dw2);
        equal(eval, "chain, antichain: d = (d_w(C1)-m_w)t + d_w(C2)", x.d, shared);
    }
    if q.is_chain() {
        equal(eval, "chains: d = m_w + (d_P-1)tM_w + (d_Q-1)M_w", x.d, mm + (dp - 1) * t * mw + (dq - 1) * mw);
        equal(eval, "chains: d = (d_w(C1)-m_w)t + d_w(C2)", x.d, shared);
    }
    if !q.is_chain() && !q.is_antichain() {
        eval.skip("all", "Q is neither a chain nor an antichain");
    }
    Ok(())
}

struct Radii {
    rho: u32,
    r1: u32,
    r2: u32,
    big_r1: u32,
    big_r2: u32,
    d1: u32,
    d2: u32,
}

fn radii(codes: &[Code], order: ProductOrder, eval: &mut Eval) -> Result<Radii> {
    let (c1, c2) = (&codes[0], &codes[1]);
    let ham = WeightFn::hamming(c1.field());
    let r = Radii {
        rho: tensor_code(c1, c2, order, false)?.code.covering_radius()?,
        r1: covering_radius(c1, eval)?,
        r2: covering_radius(c2, eval)?,
        big_r1: covering_radius(&hamming(c1)?, eval)?,
        big_r2: covering_radius(&hamming(c2)?, eval)?,
        d1: c1.max_poset_weight(&ham)?,
        d2: c2.max_poset_weight(&ham)?,
    };
    eval.value("rho", r.rho);
    eval.value("rho1", r.r1);
    eval.value("rho2", r.r2);
    eval.value("R1", r.big_r1);
    eval.value("R2", r.big_r2);
    eval.value("D_P", r.d1);
    eval.value("D_Q", r.d2);
    Ok(r)
}

fn cartesian_covering_chain_antichain(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Antichain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let r = radii(codes, ProductOrder::Cartesian, eval)?;
    let alpha = top_size(codes[0].space())?;
    eval.value("alpha_s", alpha);
    let full = (c.s * c.t * c.mw) as i64;
    if r.d1 < c.s {
        equal(eval, "(a) D_P < s: rho = stM_w", r.rho, full);
    } else {
        eval.skip("(a)", "D_P = s");
    }
    at_least(eval, "(b) rho >= R2(s-1)M_w + R2 m_w", r.rho, (r.big_r2 * (c.s - 1) * c.mw + r.big_r2 * c.mmin) as i64);
    if r.d1 == c.s && alpha == 1 {
        at_most(eval, "(c) D_P = s, alpha_s = 1: rho <= (s-1)tM_w + rho(C2)", r.rho, ((c.s - 1) * c.t * c.mw + r.r2) as i64);
    } else {
        eval.skip("(c)", "needs D_P = s and alpha_s = 1");
    }
    Ok(())
}

fn cartesian_covering_chains(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Chain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let r = radii(codes, ProductOrder::Cartesian, eval)?;
    let (alpha, beta) = (top_size(codes[0].space())?, top_size(codes[1].space())?);
    eval.value("alpha_s", alpha);
    eval.value("beta_t", beta);
    let (s, t, mw) = (c.s as i64, c.t as i64, c.mw as i64);
    let via2 = (s - 1) * t * mw + r.r2 as i64;
    let via1 = (t - 1) * s * mw + r.r1 as i64;
    if r.d1 < c.s || r.d2 < c.t {
        equal(eval, "(a) D_P < s or D_Q < t: rho = stM_w", r.rho, s * t * mw);
    } else {
        if alpha == 1 {
            at_most(eval, "(b) alpha_s = 1: rho <= (s-1)tM_w + rho(C2)", r.rho, via2);
        }
        if beta == 1 {
            at_most(eval, "(c) beta_t = 1: rho <= (t-1)sM_w + rho(C1)", r.rho, via1);
        }
        if alpha == 1 && beta == 1 {
            at_most(eval, "(d) alpha_s = beta_t = 1: rho <= min of both", r.rho, via1.min(via2));
        }
        if alpha != 1 && beta != 1 {
            eval.skip("(b)-(d)", "alpha_s and beta_t both exceed 1");
        }
    }
    let (bl1, bl2) = (r.big_r1 as i64, r.big_r2 as i64);
    let lower = ((s * bl2 - 1) * mw).max((t * bl1 - 1) * mw) + c.mmin as i64;
    at_least(eval, "(e) rho >= max{(sR2-1)M_w + m_w, (tR1-1)M_w + m_w}", r.rho, lower);
    Ok(())
}

fn lex_covering_chain(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Chain, Any, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let r = radii(codes, ProductOrder::Lex, eval)?;
    let alpha = top_size(codes[0].space())?;
    eval.value("alpha_s", alpha);
    let (s, t, mw) = (c.s as i64, c.t as i64, c.mw as i64);
    let q_chain = codes[1].space().poset().is_chain();
    if r.d1 < c.s || (q_chain && r.d2 < c.t) {
        equal(eval, "(a) D_P < s, or Q a chain and D_Q < t: rho = stM_w", r.rho, s * t * mw);
    } else if r.d2 == c.t && alpha == 1 {
        at_most(eval, "(b) D_P = s, D_Q = t, alpha_s = 1: rho <= (s-1)tM_w + rho(C2)", r.rho, (s - 1) * t * mw + r.r2 as i64);
    } else {
        eval.skip("(a)-(b)", "hypotheses do not hold");
    }
    let lower = ((s - 1) * t * mw + r.r2 as i64).max(t * r.r1 as i64);
    at_least(eval, "(c) rho >= max{(s-1)tM_w + rho(C2), t*rho(C1)}", r.rho, lower);
    Ok(())
}

fn lex_covering_antichain_chain(codes: &[Code], eval: &mut Eval) -> Result<()> {
    if !shapes(codes, Antichain, Chain, eval) {
        return Ok(());
    }
    let c = common(codes, eval);
    let r = radii(codes, ProductOrder::Lex, eval)?;
    let beta = top_size(codes[1].space())?;
    eval.value("beta_t", beta);
    let (s, t, mw) = (c.s as i64, c.t as i64, c.mw as i64);
    if r.d2 < c.t {
        equal(eval, "(a) D_Q < t: rho = stM_w", r.rho, s * t * mw);
    } else if beta == 1 {
        at_most(eval, "(b) D_Q = t, beta_t = 1: rho <= (t-1)sM_w + rho(C1)", r.rho, (t - 1) * s * mw + r.r1 as i64);
    } else {
        eval.skip("(a)-(b)", "D_Q = t and beta_t > 1");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use wpbm_core::Poset;

    fn code(poset: Poset, sizes: Vec<usize>, rows: Vec<Vec<u8>>) -> Code {
        let f = Field::new(2).unwrap();
        let space = BlockSpace::new(poset, Labeling::new(sizes).unwrap(), WeightFn::hamming(&f)).unwrap();
        Code::linear(space, rows).unwrap()
    }

    #[test]
    fn repetition_chains_fit_the_chain_bounds() {
        let c1 = code(Poset::chain(2), vec![1, 1], vec![vec![1, 1]]);
        let c2 = code(Poset::chain(2), vec![1, 1], vec![vec![1, 1]]);
        let mut eval = Eval::default();
        car_chains(&[c1.clone(), c2.clone()], &mut eval).unwrap();
        assert_eq!(eval.claims, 1);
        assert!(eval.violations.is_empty(), "{:?}", eval.violations);
        let mut eval = Eval::default();
        chain_weight(&[c1, c2], &mut eval).unwrap();
        assert!(eval.violations.is_empty());
    }

    #[test]
    fn wrong_shape_is_skipped() {
        let c1 = code(Poset::antichain(2), vec![1, 1], vec![vec![1, 1]]);
        let mut eval = Eval::default();
        car_chains(&[c1.clone(), c1], &mut eval).unwrap();
        assert_eq!(eval.claims, 0);
        assert_eq!(eval.skipped.len(), 1);
    }

    #[test]
    fn generated_pairs_have_requested_shapes() {
        let env = Envelope::default();
        for seed in 0..20 {
            let mut rng = generate::rng(seed);
            let codes = gen_chain_antichain_scan(&mut rng, &env, 1 << 24).unwrap();
            assert!(codes[0].space().poset().is_chain());
            assert!(codes[1].space().poset().is_antichain());
            let n = codes[0].space().n() * codes[1].space().n();
            assert!((codes[0].space().q() as u64).pow(n as u32) <= 1 << 12);
        }
    }
}
