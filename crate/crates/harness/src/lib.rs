//! Instance files, seeded random instances and the verification suite.

pub mod checks;
pub mod generate;
pub mod instance;
pub mod report;
pub mod suite;
