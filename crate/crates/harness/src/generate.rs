//! Seeded random posets, labelings, weights and codes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use wpbm_core::{BlockSpace, Code, Elem, Field, Labeling, Poset, Result, WeightFn};

use crate::instance::Instance;

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of one trial, independent of how many other checks or trials run.
pub fn trial_seed(suite_seed: u64, check: &str, trial: u64) -> u64 {
    let h = Sha256::digest(format!("{suite_seed}/{check}/{trial}").as_bytes());
    u64::from_le_bytes(h[..8].try_into().expect("8 bytes"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Chain,
    Antichain,
    Any,
}

/// Size limits for generated instances.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub qs: Vec<u32>,
    pub max_s: usize,
    pub max_k: usize,
    pub max_dim: usize,
    /// Largest ambient space a full scan may touch.
    pub scan_budget: u64,
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope { qs: vec![2, 3, 5], max_s: 3, max_k: 2, max_dim: 3, scan_budget: 1 << 14 }
    }
}

impl Envelope {
    pub fn with_q(q: Option<u32>) -> Self {
        let mut env = Envelope::default();
        if let Some(q) = q {
            env.qs = vec![q];
        }
        env
    }

    /// Longest ambient length `n` with `q^n` inside the scan budget (and at most 10).
    pub fn max_n(&self, q: u32) -> usize {
        let mut n = 0;
        let mut size = 1u64;
        while n < 10 && size * q as u64 <= self.scan_budget {
            size *= q as u64;
            n += 1;
        }
        n
    }

    pub fn pick_q(&self, rng: &mut TrialRng) -> u32 {
        *self.qs.choose(rng).expect("at least one q")
    }
}

pub fn random_poset(rng: &mut TrialRng, s: usize, shape: Shape) -> Poset {
    match shape {
        Shape::Chain => Poset::chain(s),
        Shape::Antichain => Poset::antichain(s),
        Shape::Any => {
            let mut perm: Vec<usize> = (0..s).collect();
            perm.shuffle(rng);
            let mut covers = Vec::new();
            for i in 0..s {
                for j in i + 1..s {
                    if rng.gen_bool(0.4) {
                        covers.push((perm[i], perm[j]));
                    }
                }
            }
            Poset::from_cover_relations(s, &covers).expect("edges follow a linear order")
        }
    }
}

/// Block sizes in `1..=max_k` with total at most `max_n` (needs `max_n >= s`).
pub fn random_labeling(rng: &mut TrialRng, s: usize, max_k: usize, max_n: usize) -> Labeling {
    assert!(s <= max_n, "{s} blocks do not fit in length {max_n}");
    let mut sizes = vec![1; s];
    let mut slack = max_n - s;
    for k in sizes.iter_mut() {
        let extra = rng.gen_range(0..max_k).min(slack);
        *k += extra;
        slack -= extra;
    }
    sizes.shuffle(rng);
    Labeling::new(sizes).expect("positive sizes")
}

/// Hamming, Lee (prime fields) or a random table that passes the weight axioms.
pub fn random_weight(rng: &mut TrialRng, field: &Field) -> WeightFn {
    match rng.gen_range(0..3) {
        0 => WeightFn::hamming(field),
        1 if field.is_prime() => WeightFn::lee(field).expect("prime field"),
        _ => loop {
            let mut table = vec![0u32; field.order()];
            for a in field.elements().skip(1) {
                let na = field.neg(a);
                if (na as usize) < (a as usize) {
                    table[a as usize] = table[na as usize];
                } else {
                    table[a as usize] = rng.gen_range(1..=3);
                }
            }
            if let Ok(w) = WeightFn::custom(field, &table) {
                break w;
            }
        },
    }
}

pub fn random_vector(rng: &mut TrialRng, q: usize, n: usize) -> Vec<Elem> {
    (0..n).map(|_| rng.gen_range(0..q) as Elem).collect()
}

/// A linear code of exactly dimension `dim`, rows drawn until they reach full rank.
pub fn random_code(rng: &mut TrialRng, space: &BlockSpace, dim: usize) -> Result<Code> {
    assert!(dim <= space.n());
    if dim == space.n() {
        return Ok(Code::full(space.clone()));
    }
    loop {
        let rows = (0..dim).map(|_| random_vector(rng, space.q(), space.n())).collect();
        let code = Code::linear(space.clone(), rows)?;
        if code.dimension() == Some(dim) {
            return Ok(code);
        }
    }
}

/// A nonlinear word set of `2..=max_words` distinct words (fewer if the space is tiny).
pub fn random_word_set(rng: &mut TrialRng, space: &BlockSpace, max_words: usize) -> Result<Code> {
    let total = space.space_size().min(max_words as u128) as usize;
    let want = rng.gen_range(2.min(total)..=total.max(1));
    let mut words = Vec::new();
    while words.len() < want {
        let w = random_vector(rng, space.q(), space.n());
        if !words.contains(&w) {
            words.push(w);
        }
    }
    Code::explicit(space.clone(), words)
}

/// Deterministic Hamming-weight linear code: same seed, same generator.
pub fn random_linear_code(
    seed: u64,
    q: u32,
    poset: Poset,
    labeling: Labeling,
    dim: usize,
) -> Result<Instance> {
    let field = Field::new(q)?;
    let space = BlockSpace::new(poset, labeling, WeightFn::hamming(&field))?;
    let mut rng = rng(seed);
    Ok(Instance::from_code(&random_code(&mut rng, &space, dim)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_code() {
        let a = random_linear_code(7, 3, Poset::chain(3), Labeling::new(vec![1, 2, 1]).unwrap(), 2);
        let b = random_linear_code(7, 3, Poset::chain(3), Labeling::new(vec![1, 2, 1]).unwrap(), 2);
        assert_eq!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn extreme_dimensions() {
        let lab = || Labeling::new(vec![2, 1]).unwrap();
        let zero = random_linear_code(1, 2, Poset::chain(2), lab(), 0).unwrap();
        assert_eq!(zero.code(1 << 10).unwrap().size(), 1);
        let full = random_linear_code(1, 2, Poset::chain(2), lab(), 3).unwrap();
        assert_eq!(full.code(1 << 10).unwrap().size(), 8);
    }

    #[test]
    fn envelope_lengths() {
        let env = Envelope::default();
        assert_eq!((env.max_n(2), env.max_n(3), env.max_n(5)), (10, 8, 6));
    }

    #[test]
    fn generated_pieces_are_valid() {
        let mut r = rng(3);
        for _ in 0..50 {
            let p = random_poset(&mut r, 3, Shape::Any);
            assert!(p.check_axioms().is_ok());
            let l = random_labeling(&mut r, 3, 2, 4);
            assert!(l.len() <= 4);
            let w = random_weight(&mut r, &Field::new(5).unwrap());
            assert!(wpbm_core::weights::validate(w.field(), w.table()).is_ok());
        }
    }

    #[test]
    fn trial_seeds_differ() {
        assert_ne!(trial_seed(0, "a", 0), trial_seed(0, "a", 1));
        assert_ne!(trial_seed(0, "a", 0), trial_seed(0, "b", 0));
        assert_eq!(trial_seed(5, "a", 2), trial_seed(5, "a", 2));
    }
}
