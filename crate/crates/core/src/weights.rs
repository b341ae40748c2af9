//! Coordinate weights `w: GF(q) -> N`.

use std::fmt;

use crate::error::{Axiom, Error, Result};
use crate::field::{Elem, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    Hamming,
    Lee,
    Table,
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightKind::Hamming => "hamming",
            WeightKind::Lee => "lee",
            WeightKind::Table => "table",
        })
    }
}

/// A validated weight table with its extremes `M_w` (max) and `m_w`
/// (min over nonzero symbols) cached.
#[derive(Clone)]
pub struct WeightFn {
    field: Field,
    table: Vec<u32>,
    max: u32,
    min_nonzero: u32,
    kind: WeightKind,
}

impl WeightFn {
    pub fn hamming(field: &Field) -> Self {
        let table = field.elements().map(|a| u32::from(a != 0)).collect();
        Self::from_parts(field, table, WeightKind::Hamming)
    }

    /// Lee weight `min(a, p - a)` on the residues of a prime field.
    pub fn lee(field: &Field) -> Result<Self> {
        if !field.is_prime() {
            return Err(Error::LeeRequiresPrimeField(field.order() as u32));
        }
        let q = field.order() as u32;
        let table = field.elements().map(|a| (a as u32).min(q - a as u32)).collect();
        Ok(Self::from_parts(field, table, WeightKind::Lee))
    }

    pub fn custom(field: &Field, table: &[u32]) -> Result<Self> {
        if table.len() != field.order() {
            return Err(Error::TableLength { expected: field.order(), found: table.len() });
        }
        validate(field, table)?;
        Ok(Self::from_parts(field, table.to_vec(), WeightKind::Table))
    }

    fn from_parts(field: &Field, table: Vec<u32>, kind: WeightKind) -> Self {
        let max = table.iter().copied().max().unwrap_or(0);
        let min_nonzero = table[1..].iter().copied().min().unwrap_or(0);
        WeightFn { field: field.clone(), table, max, min_nonzero, kind }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    #[inline]
    pub fn of(&self, a: Elem) -> u32 {
        self.table[a as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// `M_w`, the largest symbol weight.
    pub fn max_weight(&self) -> u32 {
        self.max
    }

    /// `m_w`, the smallest weight of a nonzero symbol.
    pub fn min_weight(&self) -> u32 {
        self.min_nonzero
    }

    /// Some symbol attaining `M_w`.
    pub fn heaviest(&self) -> Elem {
        self.field.elements().find(|&a| self.of(a) == self.max).unwrap_or(0)
    }
}

impl PartialEq for WeightFn {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.table == other.table
    }
}

impl Eq for WeightFn {}

impl fmt::Debug for WeightFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?} over {:?}", self.kind, self.table, self.field)
    }
}

/// Checks the three weight axioms on every element and every pair; reports
/// the first violation in row-major order.
pub fn validate(field: &Field, table: &[u32]) -> Result<()> {
    if table[0] != 0 {
        return Err(Error::AxiomViolation { axiom: Axiom::Definiteness, a: 0, b: 0 });
    }
    if let Some(a) = field.elements().skip(1).find(|&a| table[a as usize] == 0) {
        return Err(Error::AxiomViolation { axiom: Axiom::Definiteness, a, b: a });
    }
    for a in field.elements() {
        if table[a as usize] != table[field.neg(a) as usize] {
            return Err(Error::AxiomViolation { axiom: Axiom::Symmetry, a, b: field.neg(a) });
        }
    }
    for a in field.elements() {
        for b in field.elements() {
            if table[field.add(a, b) as usize] > table[a as usize] + table[b as usize] {
                return Err(Error::AxiomViolation { axiom: Axiom::Triangle, a, b });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn hamming_tables() {
        let w = WeightFn::hamming(&gf(2));
        assert_eq!(w.table(), &[0, 1]);
        assert_eq!(w.max_weight(), 1);
        assert_eq!(WeightFn::hamming(&gf(5)).table(), &[0, 1, 1, 1, 1]);
        let w4 = WeightFn::hamming(&gf(4));
        assert_eq!((w4.max_weight(), w4.min_weight()), (1, 1));
    }

    #[test]
    fn lee_tables() {
        let w = WeightFn::lee(&gf(5)).unwrap();
        assert_eq!(w.table(), &[0, 1, 2, 2, 1]);
        assert_eq!((w.max_weight(), w.min_weight()), (2, 1));
        assert_eq!(WeightFn::lee(&gf(2)).unwrap(), WeightFn::hamming(&gf(2)));
        assert_eq!(WeightFn::lee(&gf(4)).unwrap_err(), Error::LeeRequiresPrimeField(4));
    }

    #[test]
    fn lee_max_is_half_the_prime() {
        for p in (2..=256).filter(|&p| crate::field::is_prime(p)) {
            assert_eq!(WeightFn::lee(&gf(p)).unwrap().max_weight(), p / 2);
        }
    }

    #[test]
    fn custom_validation() {
        assert!(WeightFn::custom(&gf(3), &[0, 1, 1]).is_ok());
        assert_eq!(
            WeightFn::custom(&gf(3), &[0, 2, 1]).unwrap_err(),
            Error::AxiomViolation { axiom: Axiom::Symmetry, a: 1, b: 2 }
        );
        assert_eq!(
            WeightFn::custom(&gf(5), &[0, 1, 3, 3, 1]).unwrap_err(),
            Error::AxiomViolation { axiom: Axiom::Triangle, a: 1, b: 1 }
        );
        assert_eq!(
            WeightFn::custom(&gf(3), &[1, 1, 1]).unwrap_err(),
            Error::AxiomViolation { axiom: Axiom::Definiteness, a: 0, b: 0 }
        );
        assert_eq!(
            WeightFn::custom(&gf(3), &[0, 1]).unwrap_err(),
            Error::TableLength { expected: 3, found: 2 }
        );
    }
}
