//! Building new codes from old: direct sum, `(u | u + v)`, extension,
//! puncturing and tensor product, each with its resulting block space.

use std::fmt;

use crate::blockspace::{BlockSpace, Labeling};
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::field::Elem;

/// How the two posets of a sum are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumOrder {
    /// `P ⊎ Q`
    Disjoint,
    /// `P ⊕ Q`, every element of `P` below every element of `Q`.
    Linear,
}

/// How the two posets of a tensor product are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductOrder {
    Cartesian,
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    DirectSum(SumOrder),
    Plotkin(SumOrder),
    Extended,
    /// 0-based index of the deleted block.
    Punctured(usize),
    Tensor(ProductOrder),
}

impl fmt::Display for SumOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumOrder::Disjoint => "disjoint",
            SumOrder::Linear => "linear",
        })
    }
}

impl fmt::Display for ProductOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductOrder::Cartesian => "cartesian",
            ProductOrder::Lex => "lex",
        })
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::DirectSum(o) => write!(f, "direct-sum/{o}"),
            Construction::Plotkin(o) => write!(f, "plotkin/{o}"),
            Construction::Extended => f.write_str("extend"),
            Construction::Punctured(i) => write!(f, "puncture/{}", i + 1),
            Construction::Tensor(o) => write!(f, "tensor/{o}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub code: Code,
    pub provenance: Construction,
}

impl ConstructionResult {
    pub fn space(&self) -> &BlockSpace {
        self.code.space()
    }
}

pub fn direct_sum_labeling(a: &Labeling, b: &Labeling) -> Labeling {
    let sizes = a.sizes().iter().chain(b.sizes()).copied().collect();
    Labeling::new(sizes).expect("sizes stay positive")
}

/// Block `(i, j)` has size `α_i β_j`, blocks ordered `i` outer, `j` inner.
pub fn tensor_labeling(a: &Labeling, b: &Labeling) -> Labeling {
    let sizes = a.sizes().iter().flat_map(|&x| b.sizes().iter().map(move |&y| x * y)).collect();
    Labeling::new(sizes).expect("sizes stay positive")
}

fn compatible(a: &BlockSpace, b: &BlockSpace) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.weight_fn() != b.weight_fn() {
        return Err(Error::WeightMismatch);
    }
    Ok(())
}

fn sum_space(a: &BlockSpace, b: &BlockSpace, order: SumOrder) -> Result<BlockSpace> {
    compatible(a, b)?;
    let poset = match order {
        SumOrder::Disjoint => a.poset().disjoint_union(b.poset())?,
        SumOrder::Linear => a.poset().linear_sum(b.poset())?,
    };
    let labeling = direct_sum_labeling(a.labeling(), b.labeling());
    Ok(BlockSpace::new(poset, labeling, a.weight_fn().clone())?
        .with_max_space(a.max_space().max(b.max_space())))
}

fn concat(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().chain(b).copied().collect()
}

/// `{(u', u'') : u' ∈ C1, u'' ∈ C2}`.
pub fn direct_sum_code(c1: &Code, c2: &Code, order: SumOrder) -> Result<ConstructionResult> {
    let space = sum_space(c1.space(), c2.space(), order)?;
    let (n1, n2) = (c1.space().n(), c2.space().n());
    let code = match (c1.basis(), c2.basis()) {
        (Some(b1), Some(b2)) => {
            let rows = b1
                .iter()
                .map(|r| concat(r, &vec![0; n2]))
                .chain(b2.iter().map(|r| concat(&vec![0; n1], r)))
                .collect();
            Code::linear(space, rows)?
        }
        _ => {
            let (w1, w2) = (c1.codewords()?, c2.codewords()?);
            let words = w1.iter().flat_map(|a| w2.iter().map(move |b| concat(a, b))).collect();
            Code::explicit(space, words)?
        }
    };
    Ok(ConstructionResult { code, provenance: Construction::DirectSum(order) })
}

/// `{(u', u' + u'') : u' ∈ C1, u'' ∈ C2}` for codes of equal length.
pub fn plotkin_code(c1: &Code, c2: &Code, order: SumOrder) -> Result<ConstructionResult> {
    let (n1, n2) = (c1.space().n(), c2.space().n());
    let space = sum_space(c1.space(), c2.space(), order)?;
    if n1 != n2 {
        return Err(Error::LengthMismatch { expected: n1, found: n2 });
    }
    let f = c1.field();
    let add = |a: &[Elem], b: &[Elem]| -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
    };
    let code = match (c1.basis(), c2.basis()) {
        (Some(b1), Some(b2)) => {
            let rows = b1
                .iter()
                .map(|r| concat(r, r))
                .chain(b2.iter().map(|r| concat(&vec![0; n1], r)))
                .collect();
            Code::linear(space, rows)?
        }
        _ => {
            let (w1, w2) = (c1.codewords()?, c2.codewords()?);
            let words =
                w1.iter().flat_map(|a| w2.iter().map(move |b| concat(a, &add(a, b)))).collect();
            Code::explicit(space, words)?
        }
    };
    Ok(ConstructionResult { code, provenance: Construction::Plotkin(order) })
}

/// Appends one coordinate, as a new isolated block of size 1, that makes the
/// sum of all coordinates zero.
pub fn extended_code(c: &Code) -> Result<ConstructionResult> {
    let src = c.space();
    let poset = src.poset().extend()?;
    let mut sizes = src.labeling().sizes().to_vec();
    sizes.push(1);
    let space = BlockSpace::new(poset, Labeling::new(sizes)?, src.weight_fn().clone())?
        .with_max_space(src.max_space());
    let f = c.field();
    let extend = |u: &Vec<Elem>| -> Vec<Elem> {
        let sum = u.iter().fold(0, |acc, &x| f.add(acc, x));
        let mut out = u.clone();
        out.push(f.neg(sum));
        out
    };
    let code = match c.basis() {
        Some(b) => Code::linear(space, b.iter().map(extend).collect())?,
        None => Code::explicit(space, c.codewords()?.iter().map(extend).collect())?,
    };
    Ok(ConstructionResult { code, provenance: Construction::Extended })
}

/// Deletes block `i` (0-based) from every word. Needs at least two blocks.
pub fn punctured_code(c: &Code, i: usize) -> Result<ConstructionResult> {
    let src = c.space();
    let s = src.s();
    if i >= s || s < 2 {
        return Err(Error::OutOfRange { index: i + 1, len: if s < 2 { 0 } else { s } });
    }
    let poset = src.poset().puncture(i)?;
    let mut sizes = src.labeling().sizes().to_vec();
    sizes.remove(i);
    let space = BlockSpace::new(poset, Labeling::new(sizes)?, src.weight_fn().clone())?
        .with_max_space(src.max_space());
    let range = src.labeling().range(i);
    let cut = |u: &Vec<Elem>| -> Vec<Elem> {
        u.iter().enumerate().filter(|(k, _)| !range.contains(k)).map(|(_, &x)| x).collect()
    };
    let code = match c.basis() {
        Some(b) => Code::linear(space, b.iter().map(cut).collect())?,
        None => Code::explicit(space, c.codewords()?.iter().map(cut).collect())?,
    };
    Ok(ConstructionResult { code, provenance: Construction::Punctured(i) })
}

/// `u ⊗ v`: block `(i, j)` holds `u_{iς} v_{jμ}` with `ς` outer and `μ` inner.
pub fn tensor_vector(a: &BlockSpace, u: &[Elem], b: &BlockSpace, v: &[Elem]) -> Result<Vec<Elem>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    a.check_vector(u)?;
    b.check_vector(v)?;
    let f = a.field();
    let mut out = Vec::with_capacity(u.len() * v.len());
    for i in 0..a.s() {
        let ui = a.block(u, i);
        for j in 0..b.s() {
            let vj = b.block(v, j);
            for &x in ui {
                out.extend(vj.iter().map(|&y| f.mul(x, y)));
            }
        }
    }
    Ok(out)
}

/// The set `{u ⊗ v : u ∈ C1, v ∈ C2}`, kept as an explicit word list unless
/// `span` asks for its linear span.
pub fn tensor_code(
    c1: &Code,
    c2: &Code,
    order: ProductOrder,
    span: bool,
) -> Result<ConstructionResult> {
    let (a, b) = (c1.space(), c2.space());
    compatible(a, b)?;
    let poset = match order {
        ProductOrder::Cartesian => a.poset().cartesian_product(b.poset())?,
        ProductOrder::Lex => a.poset().lex_product(b.poset())?,
    };
    let labeling = tensor_labeling(a.labeling(), b.labeling());
    let space = BlockSpace::new(poset, labeling, a.weight_fn().clone())?
        .with_max_space(a.max_space().max(b.max_space()));
    let (w1, w2) = (c1.codewords()?, c2.codewords()?);
    let mut words = Vec::with_capacity(w1.len() * w2.len());
    for u in &w1 {
        for v in &w2 {
            words.push(tensor_vector(a, u, b, v)?);
        }
    }
    let code = if span { Code::linear(space, words)? } else { Code::explicit(space, words)? };
    Ok(ConstructionResult { code, provenance: Construction::Tensor(order) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poset::Poset;
    use crate::weights::WeightFn;

    fn space(q: u32, poset: Poset, sizes: Vec<usize>) -> BlockSpace {
        let f = Field::new(q).unwrap();
        BlockSpace::new(poset, Labeling::new(sizes).unwrap(), WeightFn::hamming(&f)).unwrap()
    }

    fn words(q: u32, poset: Poset, sizes: Vec<usize>, w: &[&[Elem]]) -> Code {
        Code::explicit(space(q, poset, sizes), w.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn labelings() {
        let a = Labeling::new(vec![2, 1]).unwrap();
        let b = Labeling::new(vec![1, 3]).unwrap();
        assert_eq!(direct_sum_labeling(&a, &b).sizes(), &[2, 1, 1, 3]);
        assert_eq!(tensor_labeling(&a, &b).sizes(), &[2, 6, 1, 3]);
        assert_eq!(tensor_labeling(&Labeling::trivial(3), &Labeling::trivial(4)).len(), 12);
        assert_eq!(direct_sum_labeling(&Labeling::trivial(3), &Labeling::trivial(4)).len(), 7);
    }

    #[test]
    fn direct_sums() {
        let c1 = words(2, Poset::chain(2), vec![1, 1], &[&[0, 0], &[1, 1]]);
        let c2 = words(2, Poset::chain(1), vec![1], &[&[0], &[1]]);
        let d = direct_sum_code(&c1, &c2, SumOrder::Disjoint).unwrap();
        assert_eq!(d.code.size(), 4);
        assert_eq!(d.code.min_distance().unwrap(), 1);
        let l = direct_sum_code(&c1, &c2, SumOrder::Linear).unwrap();
        assert_eq!(l.code.min_distance().unwrap(), 2);
        let c3 = words(3, Poset::chain(1), vec![1], &[&[0], &[1]]);
        assert_eq!(direct_sum_code(&c1, &c3, SumOrder::Disjoint).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn direct_sum_keeps_linearity() {
        let s = space(2, Poset::chain(2), vec![1, 1]);
        let c = Code::linear(s, vec![vec![1, 1]]).unwrap();
        let d = direct_sum_code(&c, &c, SumOrder::Linear).unwrap();
        assert_eq!(d.code.dimension(), Some(2));
    }

    #[test]
    fn plotkin() {
        let c1 = words(2, Poset::chain(2), vec![1, 1], &[&[0, 0], &[1, 1]]);
        let c2 = words(2, Poset::chain(2), vec![1, 1], &[&[0, 0], &[0, 1]]);
        let p = plotkin_code(&c1, &c2, SumOrder::Disjoint).unwrap();
        let expect: Vec<Vec<Elem>> =
            vec![vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 0], vec![1, 1, 1, 1]];
        assert_eq!(p.code.codewords().unwrap(), expect);
        // 01 on a 2-chain pulls in the bottom block, so d(C2) = 2 and so is d.
        assert_eq!(c2.min_distance().unwrap(), 2);
        assert_eq!(p.code.min_distance().unwrap(), 2);
        let c3 = words(2, Poset::chain(3), vec![1; 3], &[&[0, 0, 0]]);
        assert_eq!(
            plotkin_code(&c1, &c3, SumOrder::Disjoint).unwrap_err(),
            Error::LengthMismatch { expected: 2, found: 3 }
        );
    }

    #[test]
    fn extension() {
        let c = words(2, Poset::chain(2), vec![1, 1], &[&[0, 0], &[1, 1]]);
        let e = extended_code(&c).unwrap();
        assert_eq!(e.code.codewords().unwrap(), vec![vec![0, 0, 0], vec![1, 1, 0]]);
        assert_eq!(e.space().labeling().sizes(), &[1, 1, 1]);
        let g = Code::full(space(3, Poset::chain(1), vec![1]));
        let mut got = extended_code(&g).unwrap().code.codewords().unwrap();
        got.sort();
        assert_eq!(got, vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn puncturing() {
        let c = words(2, Poset::chain(3), vec![1; 3], &[&[0, 0, 0], &[1, 1, 1]]);
        let p = punctured_code(&c, 2).unwrap();
        assert_eq!(p.code.codewords().unwrap(), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(p.code.min_distance().unwrap(), 2);
        assert!(p.space().poset().is_chain());
        assert_eq!(punctured_code(&c, 3).unwrap_err(), Error::OutOfRange { index: 4, len: 3 });
        let one = words(2, Poset::chain(1), vec![1], &[&[0]]);
        assert!(punctured_code(&one, 0).is_err());
    }

    #[test]
    fn tensor_vectors() {
        let a = space(5, Poset::chain(2), vec![1, 1]);
        let b = space(5, Poset::chain(1), vec![2]);
        assert_eq!(tensor_vector(&a, &[2, 3], &b, &[1, 4]).unwrap(), vec![2, 3, 3, 2]);
        assert_eq!(tensor_vector(&a, &[0, 0], &b, &[1, 4]).unwrap(), vec![0; 4]);
        let c = space(2, Poset::chain(2), vec![1, 1]);
        assert_eq!(tensor_vector(&c, &[1, 1], &c, &[1, 1]).unwrap(), vec![1; 4]);
    }

    #[test]
    fn tensor_codes() {
        let c = words(2, Poset::chain(2), vec![1, 1], &[&[0, 0], &[1, 1]]);
        let t = tensor_code(&c, &c, ProductOrder::Cartesian, false).unwrap();
        assert_eq!(t.code.codewords().unwrap(), vec![vec![0; 4], vec![1; 4]]);
        assert_eq!(t.space().weight(&[1, 1, 1, 1]).unwrap(), 4);
        let a = words(2, Poset::antichain(2), vec![1, 1], &[&[0, 0], &[1, 1]]);
        let ta = tensor_code(&a, &a, ProductOrder::Cartesian, false).unwrap();
        assert_eq!(ta.code.min_distance().unwrap(), 4);
        assert!(!ta.code.is_linear());
        let lex = tensor_code(&c, &a, ProductOrder::Lex, true).unwrap();
        assert!(lex.code.is_linear());
    }
}
