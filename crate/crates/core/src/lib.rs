//! Weighted poset block metrics over finite fields.
//!
//! A [`BlockSpace`] fixes a field, a coordinate weight, a poset on the blocks
//! and a labeling of block sizes. [`Code`] computes exact minimum distance,
//! packing and covering radii, coset leaders and perfectness by brute force,
//! and [`constructions`] builds new codes and spaces from old ones.
//!
//! Indices are 0-based throughout the API; error messages report 1-based
//! block and poset indices.

pub mod blockspace;
pub mod codes;
pub mod constructions;
pub mod error;
pub mod field;
pub mod poset;
pub mod weights;

pub use blockspace::{BlockSpace, Labeling, DEFAULT_MAX_SPACE};
pub use codes::{Code, CosetTable};
pub use constructions::{Construction, ConstructionResult, ProductOrder, SumOrder};
pub use error::{Axiom, Error, Result};
pub use field::{Elem, Field};
pub use poset::{ElemSet, Poset};
pub use weights::{WeightFn, WeightKind};
