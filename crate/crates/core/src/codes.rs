//! Codes inside a [`BlockSpace`] and their exact metric parameters.
//!
//! Everything that scans `F_q^n` (covering radius, packing radius, cosets,
//! perfectness) is brute force and honours the space's enumeration cap.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::blockspace::{step_odometer, BlockSpace};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::weights::WeightFn;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Reduced row echelon basis; `pivots[r]` is the pivot column of row `r`.
    Linear { basis: Vec<Vec<Elem>>, pivots: Vec<usize> },
    /// Sorted, deduplicated words.
    Explicit { words: Vec<Vec<Elem>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    space: BlockSpace,
    repr: Repr,
}

/// One minimum-weight leader per coset of a linear code.
#[derive(Debug, Clone)]
pub struct CosetTable {
    /// Canonical coset representatives (pivot coordinates zeroed), sorted.
    pub representatives: Vec<Vec<Elem>>,
    /// The first minimum-weight vector of each coset in odometer order.
    pub leaders: Vec<Vec<Elem>>,
    pub weights: Vec<u32>,
    pub max_weight: u32,
    lookup: HashMap<Vec<Elem>, usize>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    /// Index of the coset containing `v`.
    pub fn coset_of(&self, code: &Code, v: &[Elem]) -> Option<usize> {
        let rep = code.coset_representative(v).ok()?;
        self.lookup.get(&rep).copied()
    }
}

impl Code {
    /// The span of `rows`. Dependent rows are dropped silently.
    pub fn linear(space: BlockSpace, rows: Vec<Vec<Elem>>) -> Result<Self> {
        for r in &rows {
            space.check_vector(r)?;
        }
        let (basis, pivots) = row_reduce(space.field(), rows, space.n());
        Ok(Code { space, repr: Repr::Linear { basis, pivots } })
    }

    pub fn explicit(space: BlockSpace, mut words: Vec<Vec<Elem>>) -> Result<Self> {
        for w in &words {
            space.check_vector(w)?;
        }
        words.sort_unstable();
        words.dedup();
        Ok(Code { space, repr: Repr::Explicit { words } })
    }

    pub fn zero(space: BlockSpace) -> Self {
        Code { space, repr: Repr::Linear { basis: Vec::new(), pivots: Vec::new() } }
    }

    pub fn full(space: BlockSpace) -> Self {
        let n = space.n();
        let basis = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Code { space, repr: Repr::Linear { basis, pivots: (0..n).collect() } }
    }

    pub fn space(&self) -> &BlockSpace {
        &self.space
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.repr, Repr::Linear { .. })
    }

    /// Row-reduced generator rows of a linear code.
    pub fn basis(&self) -> Option<&[Vec<Elem>]> {
        match &self.repr {
            Repr::Linear { basis, .. } => Some(basis),
            Repr::Explicit { .. } => None,
        }
    }

    pub fn dimension(&self) -> Option<usize> {
        self.basis().map(<[_]>::len)
    }

    /// Stored words of an explicit code.
    pub fn words(&self) -> Option<&[Vec<Elem>]> {
        match &self.repr {
            Repr::Explicit { words } => Some(words),
            Repr::Linear { .. } => None,
        }
    }

    /// Number of codewords (saturating).
    pub fn size(&self) -> u128 {
        match &self.repr {
            Repr::Linear { basis, .. } => {
                (self.space.q() as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX)
            }
            Repr::Explicit { words } => words.len() as u128,
        }
    }

    /// The same word set viewed in another space of equal length over the same field.
    pub fn reinterpret(&self, space: BlockSpace) -> Result<Self> {
        if space.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if space.n() != self.space.n() {
            return Err(Error::LengthMismatch { expected: self.space.n(), found: space.n() });
        }
        Ok(Code { space, repr: self.repr.clone() })
    }

    /// The same code measured with another coordinate weight.
    pub fn with_weight(&self, weight: WeightFn) -> Result<Self> {
        self.reinterpret(self.space.with_weight(weight)?)
    }

    /// All codewords in a deterministic order: coefficient odometer order for
    /// linear codes, sorted order for explicit ones.
    pub fn codewords(&self) -> Result<Vec<Vec<Elem>>> {
        match &self.repr {
            Repr::Explicit { words } => Ok(words.clone()),
            Repr::Linear { basis, .. } => {
                let size = self.size();
                let limit = self.space.max_space();
                if size > limit as u128 {
                    return Err(Error::SpaceTooLarge { size, limit });
                }
                let f = self.field();
                let q = f.order();
                let n = self.space.n();
                let mut coeffs = vec![0 as Elem; basis.len()];
                let mut out = Vec::with_capacity(size as usize);
                loop {
                    let mut w = vec![0 as Elem; n];
                    for (c, row) in coeffs.iter().zip(basis) {
                        if *c != 0 {
                            for (x, &r) in w.iter_mut().zip(row) {
                                *x = f.add(*x, f.mul(*c, r));
                            }
                        }
                    }
                    out.push(w);
                    if !step_odometer(&mut coeffs, q) {
                        break;
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        self.space.check_vector(v)?;
        match &self.repr {
            Repr::Explicit { words } => Ok(words.binary_search_by(|w| w.as_slice().cmp(v)).is_ok()),
            Repr::Linear { .. } => Ok(self.coset_representative(v)?.iter().all(|&a| a == 0)),
        }
    }

    /// Canonical representative of `v + C`: `v` with every pivot coordinate
    /// cleared by subtracting basis rows.
    pub fn coset_representative(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        let Repr::Linear { basis, pivots } = &self.repr else {
            return Err(Error::NotLinear);
        };
        self.space.check_vector(v)?;
        let f = self.field();
        let mut r = v.to_vec();
        for (row, &p) in basis.iter().zip(pivots) {
            let c = r[p];
            if c != 0 {
                for (x, &b) in r.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        Ok(r)
    }

    /// Minimum distance between distinct codewords. Linear codes use the
    /// minimum nonzero weight.
    pub fn min_distance(&self) -> Result<u32> {
        if self.size() < 2 {
            return Err(Error::TooFewWords);
        }
        match &self.repr {
            Repr::Linear { .. } => self.min_nonzero_weight(),
            Repr::Explicit { .. } => self.min_distance_pairwise(),
        }
    }

    /// Minimum distance by scanning all pairs, whatever the representation.
    pub fn min_distance_pairwise(&self) -> Result<u32> {
        let words = self.codewords()?;
        if words.len() < 2 {
            return Err(Error::TooFewWords);
        }
        let space = &self.space;
        Ok((0..words.len())
            .into_par_iter()
            .map(|i| {
                words[i + 1..]
                    .iter()
                    .map(|w| space.distance_raw(&words[i], w))
                    .min()
                    .unwrap_or(u32::MAX)
            })
            .min()
            .unwrap_or(u32::MAX))
    }

    /// Smallest weight of a nonzero codeword.
    pub fn min_nonzero_weight(&self) -> Result<u32> {
        let words = self.codewords()?;
        words
            .par_iter()
            .map(|w| self.space.weight_raw(w))
            .filter(|&w| w > 0)
            .min()
            .ok_or(Error::TooFewWords)
    }

    /// Largest codeword weight under `weight` (with Hamming this is the
    /// largest poset block weight of the code).
    pub fn max_poset_weight(&self, weight: &WeightFn) -> Result<u32> {
        let view = self.with_weight(weight.clone())?;
        let words = view.codewords()?;
        Ok(words.par_iter().map(|w| view.space.weight_raw(w)).max().unwrap_or(0))
    }

    /// `max_v min_c d(v, c)` by a full scan of the space.
    pub fn covering_radius(&self) -> Result<u32> {
        let words = self.codewords()?;
        if words.is_empty() {
            return Err(Error::TooFewWords);
        }
        let space = &self.space;
        space.par_fold(
            0u32,
            |acc, v| {
                let mut best = u32::MAX;
                for c in &words {
                    let d = space.distance_raw(v, c);
                    if d < best {
                        best = d;
                        if best <= acc {
                            break;
                        }
                    }
                }
                acc.max(best)
            },
            u32::max,
        )
    }

    /// Largest `r` whose radius-`r` balls around codewords are pairwise
    /// disjoint: one less than the smallest second-nearest codeword distance
    /// over all vectors.
    pub fn packing_radius(&self) -> Result<u32> {
        let words = self.codewords()?;
        if words.len() < 2 {
            return Err(Error::TooFewWords);
        }
        let space = &self.space;
        let second = space.par_fold(
            u32::MAX,
            |acc, v| {
                let (mut d1, mut d2) = (u32::MAX, u32::MAX);
                for c in &words {
                    let d = space.distance_raw(v, c);
                    if d < d1 {
                        d2 = d1;
                        d1 = d;
                    } else if d < d2 {
                        d2 = d;
                    }
                    if d2 < acc && d1 <= d2 && d2 != u32::MAX && d2 == d1 {
                        break;
                    }
                }
                acc.min(d2)
            },
            u32::min,
        )?;
        Ok(second - 1)
    }

    /// Whether every vector lies in exactly one radius-`r` ball around a codeword.
    pub fn is_r_perfect(&self, r: u32) -> Result<bool> {
        let words = self.codewords()?;
        let space = &self.space;
        space.par_fold(
            true,
            |acc, v| {
                if !acc {
                    return false;
                }
                let mut hits = 0;
                for c in &words {
                    if space.distance_raw(v, c) <= r {
                        hits += 1;
                        if hits > 1 {
                            break;
                        }
                    }
                }
                hits == 1
            },
            |a, b| a && b,
        )
    }

    pub fn is_perfect(&self) -> Result<bool> {
        self.is_r_perfect(self.packing_radius()?)
    }

    /// Minimum-weight leaders of every coset, ties broken by odometer order.
    pub fn coset_table(&self) -> Result<CosetTable> {
        if !self.is_linear() {
            return Err(Error::NotLinear);
        }
        let space = &self.space;
        let size = space.enumerable_size()?;
        type Best = HashMap<Vec<Elem>, (u32, u64)>;
        let merged: Best = space.par_fold(
            Best::new(),
            |mut acc, v| {
                let w = space.weight_raw(v);
                let idx = space.index_of(v);
                let rep = self.coset_representative(v).expect("valid vector");
                acc.entry(rep)
                    .and_modify(|best| {
                        if (w, idx) < *best {
                            *best = (w, idx);
                        }
                    })
                    .or_insert((w, idx));
                acc
            },
            |mut a, b| {
                for (rep, cand) in b {
                    a.entry(rep)
                        .and_modify(|best| {
                            if cand < *best {
                                *best = cand;
                            }
                        })
                        .or_insert(cand);
                }
                a
            },
        )?;
        debug_assert!(merged.values().all(|&(_, i)| i < size));
        let mut entries: Vec<(Vec<Elem>, (u32, u64))> = merged.into_iter().collect();
        entries.sort_unstable();
        let mut table = CosetTable {
            representatives: Vec::with_capacity(entries.len()),
            leaders: Vec::with_capacity(entries.len()),
            weights: Vec::with_capacity(entries.len()),
            max_weight: 0,
            lookup: HashMap::with_capacity(entries.len()),
        };
        for (k, (rep, (w, idx))) in entries.into_iter().enumerate() {
            table.lookup.insert(rep.clone(), k);
            table.representatives.push(rep);
            table.leaders.push(space.vector_at(idx));
            table.weights.push(w);
            table.max_weight = table.max_weight.max(w);
        }
        Ok(table)
    }

    /// `C_i`: the values block `i` takes over the code.
    pub fn project(&self, i: usize) -> Result<BTreeSet<Vec<Elem>>> {
        if i >= self.space.s() {
            return Err(Error::OutOfRange { index: i + 1, len: self.space.s() });
        }
        Ok(self.codewords()?.iter().map(|w| self.space.block(w, i).to_vec()).collect())
    }

    /// For a chain `b_1 < .. < b_s`: the least `l` such that the joint
    /// projection onto blocks `b_{l+1}, .., b_s` is the whole product space
    /// (so `s` when the top block alone is not covered).
    pub fn trailing_full_index(&self) -> Result<usize> {
        let order = self.space.poset().chain_order()?;
        let s = order.len();
        for l in 0..=s {
            let coords: Vec<usize> =
                order[l..].iter().flat_map(|&b| self.space.labeling().range(b)).collect();
            if self.projection_is_full(&coords)? {
                return Ok(l);
            }
        }
        unreachable!("the empty projection is always full")
    }

    fn projection_is_full(&self, coords: &[usize]) -> Result<bool> {
        match &self.repr {
            Repr::Linear { basis, .. } => {
                let rows = basis.iter().map(|r| coords.iter().map(|&c| r[c]).collect()).collect();
                let (reduced, _) = row_reduce(self.field(), rows, coords.len());
                Ok(reduced.len() == coords.len())
            }
            Repr::Explicit { words } => {
                let distinct: BTreeSet<Vec<Elem>> =
                    words.iter().map(|w| coords.iter().map(|&c| w[c]).collect()).collect();
                let full = (self.space.q() as u128).checked_pow(coords.len() as u32);
                Ok(full == Some(distinct.len() as u128))
            }
        }
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn row_reduce(f: &Field, mut rows: Vec<Vec<Elem>>, n: usize) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = f.mul(inv, *x);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, &b) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockspace::Labeling;
    use crate::poset::Poset;

    fn space(q: u32, poset: Poset, sizes: Vec<usize>, lee: bool) -> BlockSpace {
        let f = Field::new(q).unwrap();
        let w = if lee { WeightFn::lee(&f).unwrap() } else { WeightFn::hamming(&f) };
        BlockSpace::new(poset, Labeling::new(sizes).unwrap(), w).unwrap()
    }

    fn repetition(poset: Poset) -> Code {
        Code::linear(space(2, poset, vec![1; 3], false), vec![vec![1, 1, 1]]).unwrap()
    }

    #[test]
    fn codeword_enumeration() {
        let s = space(2, Poset::antichain(3), vec![1; 3], false);
        let c = Code::linear(s.clone(), vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(c.codewords().unwrap().len(), 4);
        let e = Code::explicit(s.clone(), vec![vec![1, 1, 1], vec![0, 0, 0], vec![1, 1, 1]]).unwrap();
        assert_eq!(e.codewords().unwrap(), vec![vec![0, 0, 0], vec![1, 1, 1]]);
        let d = Code::linear(s, vec![vec![1, 1, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(d.dimension(), Some(1));
        assert_eq!(d.codewords().unwrap().len(), 2);
    }

    #[test]
    fn min_distance_examples() {
        assert_eq!(repetition(Poset::chain(3)).min_distance().unwrap(), 3);
        assert_eq!(repetition(Poset::antichain(3)).min_distance().unwrap(), 3);
        let s = space(5, Poset::chain(2), vec![2, 1], true);
        let c = Code::linear(s, vec![vec![1, 3, 4]]).unwrap();
        assert_eq!(c.min_distance().unwrap(), 3);
        assert_eq!(c.min_distance_pairwise().unwrap(), 3);
        let z = Code::zero(space(2, Poset::chain(1), vec![1], false));
        assert_eq!(z.min_distance().unwrap_err(), Error::TooFewWords);
    }

    #[test]
    fn covering_radius_examples() {
        let full = Code::full(space(3, Poset::chain(2), vec![1, 1], false));
        assert_eq!(full.covering_radius().unwrap(), 0);
        assert_eq!(repetition(Poset::chain(3)).covering_radius().unwrap(), 2);
        assert_eq!(repetition(Poset::antichain(3)).covering_radius().unwrap(), 1);
    }

    #[test]
    fn packing_radius_examples() {
        assert_eq!(repetition(Poset::chain(3)).packing_radius().unwrap(), 2);
        assert_eq!(repetition(Poset::antichain(3)).packing_radius().unwrap(), 1);
        let s = space(2, Poset::chain(3), vec![1; 3], false);
        let dup = Code::explicit(s, vec![vec![1, 0, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(dup.packing_radius().unwrap_err(), Error::TooFewWords);
    }

    #[test]
    fn perfectness() {
        let c = repetition(Poset::chain(3));
        assert!(c.is_r_perfect(2).unwrap());
        assert!(!c.is_r_perfect(1).unwrap());
        assert!(c.is_perfect().unwrap());
        let full = Code::full(space(3, Poset::antichain(2), vec![1, 1], false));
        assert!(full.is_r_perfect(0).unwrap());
    }

    #[test]
    fn cosets() {
        let c = repetition(Poset::chain(3));
        let t = c.coset_table().unwrap();
        let mut w = t.weights.clone();
        w.sort_unstable();
        assert_eq!(w, vec![0, 1, 2, 2]);
        assert_eq!(t.max_weight, 2);

        let full = Code::full(space(2, Poset::chain(3), vec![1; 3], false));
        let tf = full.coset_table().unwrap();
        assert_eq!((tf.len(), tf.max_weight), (1, 0));

        let s = space(2, Poset::chain(3), vec![1; 3], false);
        let z = Code::zero(s);
        let tz = z.coset_table().unwrap();
        assert_eq!((tz.len(), tz.max_weight), (8, 3));

        let e = Code::explicit(c.space().clone(), vec![vec![0, 0, 0]]).unwrap();
        assert_eq!(e.coset_table().unwrap_err(), Error::NotLinear);
    }

    #[test]
    fn projections() {
        let c = repetition(Poset::chain(3));
        let p: Vec<_> = c.project(1).unwrap().into_iter().collect();
        assert_eq!(p, vec![vec![0], vec![1]]);
        assert_eq!(c.trailing_full_index().unwrap(), 2);
        let full = Code::full(space(2, Poset::chain(3), vec![1; 3], false));
        assert_eq!(full.trailing_full_index().unwrap(), 0);
        assert_eq!(repetition(Poset::antichain(3)).trailing_full_index().unwrap_err(), Error::NotAChain);
    }

    #[test]
    fn max_weight_profiles() {
        let c = repetition(Poset::chain(3));
        let h = WeightFn::hamming(c.field());
        assert_eq!(c.max_poset_weight(&h).unwrap(), 3);
        let z = Code::zero(c.space().clone());
        assert_eq!(z.max_poset_weight(&h).unwrap(), 0);
        let s = space(2, Poset::chain(2), vec![2, 1], false);
        let one = Code::linear(s, vec![vec![1, 1, 0]]).unwrap();
        assert_eq!(one.max_poset_weight(&h).unwrap(), 1);
    }

    #[test]
    fn membership() {
        let c = repetition(Poset::chain(3));
        assert!(c.contains(&[1, 1, 1]).unwrap());
        assert!(!c.contains(&[1, 0, 1]).unwrap());
    }
}
