//! The weighted poset block space `(F_q^n, d)` determined by a poset `P`, a
//! labeling `k_1, .., k_s` of its elements, and a coordinate weight `w`.
//!
//! For `u = (u_1 | .. | u_s)` with block support `S = {i : u_i != 0}`, let
//! `I` be the ideal generated by `S` and `M` its maximal elements. Then
//!
//! ```text
//! weight(u) = sum_{i in M} max_j w(u_ij)  +  |I \ M| * M_w
//! ```
//!
//! and `distance(u, v) = weight(u - v)`.
//!
//! Vectors are enumerated in odometer order (last coordinate fastest); the
//! index of `v` is `sum_j v_j q^(n-1-j)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poset::{ElemSet, Poset};
use crate::weights::WeightFn;

/// Default cap on `q^n` for full-space enumeration.
pub const DEFAULT_MAX_SPACE: u64 = 1 << 24;

const CHUNK: u64 = 1 << 12;

/// Block sizes `k_1, .., k_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl Labeling {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::EmptyBlock);
        }
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &k in &sizes {
            acc += k;
            offsets.push(acc);
        }
        Ok(Labeling { sizes, offsets })
    }

    /// All blocks of size one.
    pub fn trivial(s: usize) -> Self {
        Self::new(vec![1; s]).expect("unit blocks are valid")
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.sizes.iter().all(|&k| k == 1)
    }

    #[inline]
    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }
}

#[derive(Debug, Clone)]
pub struct BlockSpace {
    poset: Poset,
    labeling: Labeling,
    weight: WeightFn,
    /// Block index of each coordinate.
    block_of: Vec<usize>,
    max_space: u64,
}

impl PartialEq for BlockSpace {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset && self.labeling == other.labeling && self.weight == other.weight
    }
}

impl Eq for BlockSpace {}

impl BlockSpace {
    pub fn new(poset: Poset, labeling: Labeling, weight: WeightFn) -> Result<Self> {
        if poset.len() != labeling.block_count() {
            return Err(Error::LabelingMismatch {
                labeling: labeling.block_count(),
                poset: poset.len(),
            });
        }
        let block_of = (0..labeling.block_count())
            .flat_map(|i| std::iter::repeat_n(i, labeling.sizes()[i]))
            .collect();
        Ok(BlockSpace { poset, labeling, weight, block_of, max_space: DEFAULT_MAX_SPACE })
    }

    /// Overrides the enumeration cap on `q^n`.
    pub fn with_max_space(mut self, limit: u64) -> Self {
        self.max_space = limit;
        self
    }

    pub fn max_space(&self) -> u64 {
        self.max_space
    }

    /// Same poset and labeling under another coordinate weight.
    pub fn with_weight(&self, weight: WeightFn) -> Result<Self> {
        if weight.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(BlockSpace { weight, ..self.clone() })
    }

    /// Same poset and labeling under the Hamming weight.
    pub fn hamming(&self) -> Self {
        self.with_weight(WeightFn::hamming(self.field())).expect("same field")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn weight_fn(&self) -> &WeightFn {
        &self.weight
    }

    pub fn field(&self) -> &Field {
        self.weight.field()
    }

    pub fn q(&self) -> usize {
        self.field().order()
    }

    /// Number of coordinates.
    pub fn n(&self) -> usize {
        self.labeling.len()
    }

    /// Number of blocks.
    pub fn s(&self) -> usize {
        self.labeling.block_count()
    }

    pub fn block<'a>(&self, u: &'a [Elem], i: usize) -> &'a [Elem] {
        &u[self.labeling.range(i)]
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![0; self.n()]
    }

    pub fn check_vector(&self, u: &[Elem]) -> Result<()> {
        if u.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: u.len() });
        }
        if let Some(&a) = u.iter().find(|&&a| a as usize >= self.q()) {
            return Err(Error::NotAnElement { value: a as u32, q: self.q() as u32 });
        }
        Ok(())
    }

    pub fn block_support(&self, u: &[Elem]) -> Result<ElemSet> {
        self.check_vector(u)?;
        Ok((0..self.s()).filter(|&i| self.block(u, i).iter().any(|&a| a != 0)).collect())
    }

    /// `W_i(u)`, the largest coordinate weight inside block `i`.
    pub fn block_max_weight(&self, u: &[Elem], i: usize) -> Result<u32> {
        self.check_vector(u)?;
        if i >= self.s() {
            return Err(Error::OutOfRange { index: i + 1, len: self.s() });
        }
        Ok(self.block(u, i).iter().map(|&a| self.weight.of(a)).max().unwrap_or(0))
    }

    pub fn weight(&self, u: &[Elem]) -> Result<u32> {
        self.check_vector(u)?;
        Ok(self.weight_raw(u))
    }

    pub fn distance(&self, u: &[Elem], v: &[Elem]) -> Result<u32> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        Ok(self.distance_raw(u, v))
    }

    /// Weight without validating `u`; panics if `u` is shorter than `n`.
    #[inline]
    pub fn weight_raw(&self, u: &[Elem]) -> u32 {
        self.weight_with(|j| u[j])
    }

    /// Distance without validating the inputs.
    #[inline]
    pub fn distance_raw(&self, u: &[Elem], v: &[Elem]) -> u32 {
        let f = self.field();
        self.weight_with(|j| f.sub(u[j], v[j]))
    }

    #[inline]
    fn weight_with(&self, coord: impl Fn(usize) -> Elem) -> u32 {
        let mut block_max = [0u32; crate::poset::MAX_ELEMENTS];
        let mut support = 0u64;
        for j in 0..self.n() {
            let a = coord(j);
            if a != 0 {
                let b = self.block_of[j];
                support |= 1 << b;
                let w = self.weight.of(a);
                if w > block_max[b] {
                    block_max[b] = w;
                }
            }
        }
        if support == 0 {
            return 0;
        }
        let ideal = self.poset.ideal(ElemSet(support));
        let maximal = self.poset.maximal_unchecked(ideal);
        let top: u32 = maximal.iter().map(|i| block_max[i]).sum();
        top + (ideal.len() - maximal.len()) as u32 * self.weight.max_weight()
    }

    pub fn add(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
    }

    pub fn sub(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        u.iter().zip(v).map(|(&a, &b)| f.sub(a, b)).collect()
    }

    pub fn neg(&self, u: &[Elem]) -> Vec<Elem> {
        u.iter().map(|&a| self.field().neg(a)).collect()
    }

    pub fn scale(&self, c: Elem, u: &[Elem]) -> Vec<Elem> {
        u.iter().map(|&a| self.field().mul(c, a)).collect()
    }

    /// `q^n`, saturating.
    pub fn space_size(&self) -> u128 {
        (self.q() as u128).checked_pow(self.n() as u32).unwrap_or(u128::MAX)
    }

    /// `q^n` if it is within the enumeration cap.
    pub fn enumerable_size(&self) -> Result<u64> {
        let size = self.space_size();
        if size > self.max_space as u128 {
            Err(Error::SpaceTooLarge { size, limit: self.max_space })
        } else {
            Ok(size as u64)
        }
    }

    pub fn vector_at(&self, mut index: u64) -> Vec<Elem> {
        let q = self.q() as u64;
        let mut v = vec![0; self.n()];
        for slot in v.iter_mut().rev() {
            *slot = (index % q) as Elem;
            index /= q;
        }
        v
    }

    pub fn index_of(&self, v: &[Elem]) -> u64 {
        v.iter().fold(0, |acc, &a| acc * self.q() as u64 + a as u64)
    }

    /// Advances `v` to the next vector in odometer order; false on wrap-around.
    #[inline]
    pub fn step(&self, v: &mut [Elem]) -> bool {
        step_odometer(v, self.q())
    }

    /// Every vector of the space in odometer order.
    pub fn vectors(&self) -> Result<impl Iterator<Item = Vec<Elem>> + '_> {
        let size = self.enumerable_size()?;
        Ok((0..size).map(|i| self.vector_at(i)))
    }

    /// Folds over every vector, splitting the space into index chunks that
    /// run in parallel. `reduce` must be associative and commutative over the
    /// chunk results for the outcome to be thread-count independent.
    pub fn par_fold<T, F, R>(&self, identity: T, fold: F, reduce: R) -> Result<T>
    where
        T: Clone + Send + Sync,
        F: Fn(T, &[Elem]) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        let size = self.enumerable_size()?;
        let chunks = size.div_ceil(CHUNK);
        Ok((0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                let end = (start + CHUNK).min(size);
                let mut v = self.vector_at(start);
                let mut acc = identity.clone();
                for _ in start..end {
                    acc = fold(acc, &v);
                    self.step(&mut v);
                }
                acc
            })
            .reduce(|| identity.clone(), &reduce))
    }

    /// Collects the vectors accepted by `keep`, in odometer order.
    pub fn par_filter<F>(&self, keep: F) -> Result<Vec<Vec<Elem>>>
    where
        F: Fn(&[Elem]) -> bool + Sync + Send,
    {
        let size = self.enumerable_size()?;
        let chunks = size.div_ceil(CHUNK);
        let parts: Vec<Vec<Vec<Elem>>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                let end = (start + CHUNK).min(size);
                let mut v = self.vector_at(start);
                let mut out = Vec::new();
                for _ in start..end {
                    if keep(&v) {
                        out.push(v.clone());
                    }
                    self.step(&mut v);
                }
                out
            })
            .collect();
        Ok(parts.into_iter().flatten().collect())
    }

    /// `{v : d(center, v) <= r}` in odometer order.
    pub fn ball(&self, center: &[Elem], r: u32) -> Result<Vec<Vec<Elem>>> {
        self.check_vector(center)?;
        self.par_filter(|v| self.distance_raw(center, v) <= r)
    }

    pub fn ball_size(&self, center: &[Elem], r: u32) -> Result<u64> {
        self.check_vector(center)?;
        self.par_fold(0u64, |acc, v| acc + u64::from(self.distance_raw(center, v) <= r), |a, b| a + b)
    }
}

#[inline]
pub(crate) fn step_odometer(v: &mut [Elem], q: usize) -> bool {
    for slot in v.iter_mut().rev() {
        if (*slot as usize) + 1 < q {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}
