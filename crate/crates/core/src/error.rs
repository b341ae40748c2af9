use std::fmt;

use thiserror::Error;

/// Which weight axiom a table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `w(0) = 0` and `w(a) > 0` for `a != 0`.
    Definiteness,
    /// `w(a) = w(-a)`.
    Symmetry,
    /// `w(a + b) <= w(a) + w(b)`.
    Triangle,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Definiteness => "definiteness",
            Axiom::Symmetry => "symmetry",
            Axiom::Triangle => "triangle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power in 2..=256")]
    NotAPrimePower(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("Lee weight needs a prime field, got GF({0})")]
    LeeRequiresPrimeField(u32),
    #[error("weight table has {found} entries, field has {expected} elements")]
    TableLength { expected: usize, found: usize },
    #[error("weight table violates {axiom} at ({a}, {b})")]
    AxiomViolation { axiom: Axiom, a: u8, b: u8 },
    #[error("cover relations contain a cycle through {0:?} (1-based)")]
    CycleDetected(Vec<usize>),
    #[error("set is not downward closed: {missing} lies below a member (1-based)")]
    NotAnIdeal { missing: usize },
    #[error("index {index} out of range 1..={len}")]
    OutOfRange { index: usize, len: usize },
    #[error("posets are limited to {max} elements, got {found}")]
    TooManyElements { max: usize, found: usize },
    #[error("labeling has {labeling} blocks but poset has {poset} elements")]
    LabelingMismatch { labeling: usize, poset: usize },
    #[error("block sizes must be positive")]
    EmptyBlock,
    #[error("vector length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("value {value} is not an element of GF({q})")]
    NotAnElement { value: u32, q: u32 },
    #[error("space of {size} vectors exceeds the enumeration limit {limit}")]
    SpaceTooLarge { size: u128, limit: u64 },
    #[error("code needs at least two distinct words")]
    TooFewWords,
    #[error("operation needs a linear code")]
    NotLinear,
    #[error("operation needs a chain poset")]
    NotAChain,
    #[error("codes live over different fields")]
    FieldMismatch,
    #[error("codes use different weight functions")]
    WeightMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
