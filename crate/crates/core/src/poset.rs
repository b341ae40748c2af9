//! Finite posets on `{0, .., s-1}` with the full order relation stored as
//! down-set bitmasks.
//!
//! The Rust API is 0-based; instance files and error messages use 1-based
//! labels. Products flatten the pair `(i, j)` to `i * t + j`, which is the
//! 1-based `(i-1)t + j` layout used for tensor block coordinates.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ELEMENTS: usize = 64;

/// A subset of poset elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(i: usize) -> Self {
        ElemSet(1 << i)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    /// `down[i]` holds every `j` with `j <= i`, including `i`.
    down: Vec<u64>,
    /// `up[i]` holds every `j` with `i <= j`, including `i`.
    up: Vec<u64>,
}

impl Poset {
    fn from_down(down: Vec<u64>) -> Self {
        let n = down.len();
        let mut up = vec![0u64; n];
        for (j, &d) in down.iter().enumerate() {
            for i in ElemSet(d).iter() {
                up[i] |= 1 << j;
            }
        }
        Poset { down, up }
    }

    /// Builds the order generated by `a < b` for each pair (0-based).
    pub fn from_cover_relations(s: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if s > MAX_ELEMENTS {
            return Err(Error::TooManyElements { max: MAX_ELEMENTS, found: s });
        }
        let mut below = vec![Vec::new(); s];
        for &(a, b) in covers {
            for x in [a, b] {
                if x >= s {
                    return Err(Error::OutOfRange { index: x + 1, len: s });
                }
            }
            if a == b {
                return Err(Error::CycleDetected(vec![a + 1, a + 1]));
            }
            below[b].push(a);
        }
        if let Some(cycle) = find_cycle(&below) {
            return Err(Error::CycleDetected(cycle.into_iter().map(|i| i + 1).collect()));
        }
        // Acyclic: closure by memoized DFS over the "below" graph.
        let mut down: Vec<Option<u64>> = vec![None; s];
        fn close(i: usize, below: &[Vec<usize>], down: &mut [Option<u64>]) -> u64 {
            if let Some(d) = down[i] {
                return d;
            }
            let mut d = 1u64 << i;
            for &j in &below[i] {
                d |= close(j, below, down);
            }
            down[i] = Some(d);
            d
        }
        for i in 0..s {
            close(i, &below, &mut down);
        }
        Ok(Self::from_down(down.into_iter().map(Option::unwrap).collect()))
    }

    /// Builds a poset from a full relation (`leq(i, j)` answers `i <= j`);
    /// `None` unless the relation is a partial order.
    pub fn from_relation(s: usize, leq: impl Fn(usize, usize) -> bool) -> Option<Self> {
        if s > MAX_ELEMENTS {
            return None;
        }
        let down: Vec<u64> = (0..s)
            .map(|j| (0..s).filter(|&i| i == j || leq(i, j)).fold(0, |m, i| m | 1 << i))
            .collect();
        for j in 0..s {
            for i in ElemSet(down[j]).iter() {
                let antisymmetric = i == j || down[i] >> j & 1 == 0;
                let transitive = ElemSet(down[i]).is_subset(ElemSet(down[j]));
                if !antisymmetric || !transitive {
                    return None;
                }
            }
        }
        Some(Self::from_down(down))
    }

    pub fn chain(s: usize) -> Self {
        assert!(s <= MAX_ELEMENTS);
        Self::from_down((0..s).map(|j| ElemSet::full(j + 1).0).collect())
    }

    pub fn antichain(s: usize) -> Self {
        assert!(s <= MAX_ELEMENTS);
        Self::from_down((0..s).map(|j| 1u64 << j).collect())
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn elements(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j] >> i & 1 == 1
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.comparable(i, j)))
    }

    pub fn is_antichain(&self) -> bool {
        self.down.iter().enumerate().all(|(i, &d)| d == 1 << i)
    }

    /// Elements sorted from the bottom of a chain to its top.
    pub fn chain_order(&self) -> Result<Vec<usize>> {
        if !self.is_chain() {
            return Err(Error::NotAChain);
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.down[i].count_ones());
        Ok(order)
    }

    /// Down-set of `i`, including `i`.
    #[inline]
    pub fn principal(&self, i: usize) -> ElemSet {
        ElemSet(self.down[i])
    }

    /// Elements strictly below `i`.
    pub fn strict_principal(&self, i: usize) -> ElemSet {
        ElemSet(self.down[i] & !(1 << i))
    }

    /// Elements strictly above `i`.
    #[inline]
    pub fn strict_upper(&self, i: usize) -> ElemSet {
        ElemSet(self.up[i] & !(1 << i))
    }

    /// The smallest ideal containing `e`.
    #[inline]
    pub fn ideal(&self, e: ElemSet) -> ElemSet {
        ElemSet(e.iter().fold(0, |m, i| m | self.down[i]))
    }

    pub fn is_ideal(&self, set: ElemSet) -> bool {
        self.ideal(set) == set
    }

    /// Maximal elements of an ideal.
    pub fn maximal_elements(&self, ideal: ElemSet) -> Result<ElemSet> {
        if let Some(missing) = self.ideal(ideal).difference(ideal).iter().next() {
            return Err(Error::NotAnIdeal { missing: missing + 1 });
        }
        Ok(self.maximal_unchecked(ideal))
    }

    #[inline]
    pub(crate) fn maximal_unchecked(&self, set: ElemSet) -> ElemSet {
        set.iter().filter(|&i| self.up[i] & set.0 == 1 << i).collect()
    }

    /// Cover pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for a in self.strict_principal(b).iter() {
                let between = self.strict_upper(a).intersection(self.strict_principal(b));
                if between.is_empty() {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `P ⊎ Q`: `Q` shifted past `P`, no cross relations.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        let s = self.len();
        check_size(s + other.len())?;
        let mut down = self.down.clone();
        down.extend(other.down.iter().map(|&d| d << s));
        Ok(Self::from_down(down))
    }

    /// `P ⊕ Q`: disjoint union with every element of `P` below every element of `Q`.
    pub fn linear_sum(&self, other: &Poset) -> Result<Poset> {
        let s = self.len();
        check_size(s + other.len())?;
        let all_p = ElemSet::full(s).0;
        let mut down = self.down.clone();
        down.extend(other.down.iter().map(|&d| d << s | all_p));
        Ok(Self::from_down(down))
    }

    /// `P ⊗ Q`: componentwise order on pairs.
    pub fn cartesian_product(&self, other: &Poset) -> Result<Poset> {
        self.product(other, |x, xp, y, yp| self.leq(x, xp) && other.leq(y, yp))
    }

    /// `P ⋆ Q`: `(x, y) <= (x', y')` iff `x < x'`, or `x = x'` and `y <= y'`.
    pub fn lex_product(&self, other: &Poset) -> Result<Poset> {
        self.product(other, |x, xp, y, yp| self.lt(x, xp) || (x == xp && other.leq(y, yp)))
    }

    fn product(
        &self,
        other: &Poset,
        leq: impl Fn(usize, usize, usize, usize) -> bool,
    ) -> Result<Poset> {
        let (s, t) = (self.len(), other.len());
        check_size(s * t)?;
        let down = (0..s * t)
            .map(|b| {
                let (xp, yp) = (b / t, b % t);
                (0..s * t)
                    .filter(|&a| leq(a / t, xp, a % t, yp))
                    .fold(0u64, |m, a| m | 1 << a)
            })
            .collect();
        Ok(Self::from_down(down))
    }

    /// Deletes element `z` and relabels the rest in their original order.
    pub fn puncture(&self, z: usize) -> Result<Poset> {
        let s = self.len();
        if z >= s {
            return Err(Error::OutOfRange { index: z + 1, len: s });
        }
        let squeeze = |m: u64| -> u64 {
            let low = m & ((1u64 << z) - 1);
            let high = if z + 1 >= 64 { 0 } else { (m >> (z + 1)) << z };
            low | high
        };
        let down = (0..s).filter(|&j| j != z).map(|j| squeeze(self.down[j])).collect();
        Ok(Self::from_down(down))
    }

    /// Adds a new isolated element `s`.
    pub fn extend(&self) -> Result<Poset> {
        let s = self.len();
        check_size(s + 1)?;
        let mut down = self.down.clone();
        down.push(1 << s);
        Ok(Self::from_down(down))
    }

    /// Exhaustive reflexivity/antisymmetry/transitivity scan.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let s = self.len();
        for i in 0..s {
            if !self.leq(i, i) {
                return Err(format!("not reflexive at {}", i + 1));
            }
            for j in 0..s {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(format!("not antisymmetric at ({}, {})", i + 1, j + 1));
                }
                for k in 0..s {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(format!("not transitive at ({}, {}, {})", i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self.covers().into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
        write!(f, "Poset({}, covers {:?})", self.len(), covers)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        Err(Error::TooManyElements { max: MAX_ELEMENTS, found: n })
    } else {
        Ok(())
    }
}

/// Finds a directed cycle in the graph `i -> below[i]`, returned as a closed walk.
fn find_cycle(below: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(i: usize, below: &[Vec<usize>], mark: &mut [Mark], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        mark[i] = Mark::Active;
        stack.push(i);
        for &j in &below[i] {
            match mark[j] {
                Mark::Active => {
                    let start = stack.iter().position(|&x| x == j).unwrap();
                    let mut cycle: Vec<usize> = stack[start..].to_vec();
                    cycle.push(j);
                    // Walk is along "is above"; report it bottom-up.
                    cycle.reverse();
                    return Some(cycle);
                }
                Mark::New => {
                    if let Some(c) = visit(j, below, mark, stack) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        stack.pop();
        mark[i] = Mark::Done;
        None
    }
    let mut mark = vec![Mark::New; below.len()];
    let mut stack = Vec::new();
    (0..below.len()).find_map(|i| {
        if mark[i] == Mark::New {
            visit(i, below, &mut mark, &mut stack)
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().map(|&x| x - 1).collect()
    }

    #[test]
    fn covers_build_orders() {
        let p = Poset::from_cover_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p, Poset::chain(3));
        assert_eq!(Poset::from_cover_relations(3, &[]).unwrap(), Poset::antichain(3));
        assert!(matches!(
            Poset::from_cover_relations(2, &[(0, 1), (1, 0)]),
            Err(Error::CycleDetected(_))
        ));
        assert_eq!(
            Poset::from_cover_relations(2, &[(0, 2)]).unwrap_err(),
            Error::OutOfRange { index: 3, len: 2 }
        );
    }

    #[test]
    fn cycle_witness_is_closed() {
        let Err(Error::CycleDetected(c)) =
            Poset::from_cover_relations(4, &[(0, 1), (1, 2), (2, 0), (2, 3)])
        else {
            panic!("expected a cycle");
        };
        assert_eq!(c.first(), c.last());
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn chain_predicates() {
        assert!(Poset::chain(4).is_chain());
        assert!(!Poset::chain(2).is_antichain());
        assert!(Poset::antichain(1).is_chain());
        assert!(Poset::antichain(1).is_antichain());
    }

    #[test]
    fn ideals() {
        assert_eq!(Poset::chain(3).ideal(set(&[3])), set(&[1, 2, 3]));
        assert_eq!(Poset::antichain(3).ideal(set(&[2])), set(&[2]));
        let p = Poset::from_cover_relations(4, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(p.ideal(set(&[3, 4])), set(&[1, 2, 3, 4]));
        assert_eq!(p.strict_principal(2), set(&[1, 2]));
    }

    #[test]
    fn maximal() {
        assert_eq!(Poset::chain(3).maximal_elements(set(&[1, 2, 3])).unwrap(), set(&[3]));
        assert_eq!(Poset::antichain(3).maximal_elements(set(&[1, 3])).unwrap(), set(&[1, 3]));
        let p = Poset::from_cover_relations(4, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(p.maximal_elements(set(&[1, 2, 3])).unwrap(), set(&[3]));
        assert_eq!(
            Poset::chain(3).maximal_elements(set(&[2])).unwrap_err(),
            Error::NotAnIdeal { missing: 1 }
        );
    }

    #[test]
    fn sums() {
        let u = Poset::chain(2).disjoint_union(&Poset::chain(2)).unwrap();
        assert_eq!(u.covers(), vec![(0, 1), (2, 3)]);
        assert_eq!(
            Poset::antichain(1).disjoint_union(&Poset::antichain(1)).unwrap(),
            Poset::antichain(2)
        );
        assert!(!Poset::chain(1).disjoint_union(&Poset::chain(1)).unwrap().is_chain());

        assert_eq!(Poset::chain(2).linear_sum(&Poset::chain(2)).unwrap(), Poset::chain(4));
        let l = Poset::antichain(2).linear_sum(&Poset::antichain(2)).unwrap();
        assert!(l.leq(0, 2) && l.leq(1, 3) && !l.comparable(0, 1));
        assert!(Poset::chain(1).linear_sum(&Poset::chain(1)).unwrap().is_chain());
    }

    #[test]
    fn products() {
        let d = Poset::chain(2).cartesian_product(&Poset::chain(2)).unwrap();
        // (1,1)=0, (1,2)=1, (2,1)=2, (2,2)=3
        assert_eq!(d.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(!d.comparable(1, 2));
        assert_eq!(
            Poset::antichain(2).cartesian_product(&Poset::antichain(2)).unwrap(),
            Poset::antichain(4)
        );
        let ca = Poset::chain(2).cartesian_product(&Poset::antichain(2)).unwrap();
        assert_eq!(ca.covers(), vec![(0, 2), (1, 3)]);

        assert_eq!(Poset::chain(2).lex_product(&Poset::chain(2)).unwrap(), Poset::chain(4));
        let la = Poset::chain(2).lex_product(&Poset::antichain(2)).unwrap();
        assert_eq!(la.covers(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(
            Poset::antichain(2).lex_product(&Poset::antichain(2)).unwrap(),
            Poset::antichain(4)
        );
    }

    #[test]
    fn puncture_and_extend() {
        assert_eq!(Poset::chain(3).puncture(1).unwrap(), Poset::chain(2));
        assert_eq!(Poset::antichain(3).puncture(0).unwrap(), Poset::antichain(2));
        let diamond = Poset::chain(2).cartesian_product(&Poset::chain(2)).unwrap();
        let p = diamond.puncture(3).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (0, 2)]);
        assert_eq!(Poset::chain(3).puncture(3).unwrap_err(), Error::OutOfRange { index: 4, len: 3 });

        let e = Poset::chain(2).extend().unwrap();
        assert_eq!(e.covers(), vec![(0, 1)]);
        assert_eq!(e.len(), 3);
        assert!(!e.is_chain());
        assert_eq!(Poset::antichain(2).extend().unwrap(), Poset::antichain(3));
    }

    #[test]
    fn chain_order_follows_relation() {
        let p = Poset::from_cover_relations(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(p.chain_order().unwrap(), vec![2, 0, 1]);
        assert_eq!(Poset::antichain(2).chain_order().unwrap_err(), Error::NotAChain);
    }
}
