//! Exact computation and cross-verification of restricted Lah, Stirling,
//! Fubini and doubly ordered numbers.
//!
//! Each number is computed from its exponential generating function and
//! checked against explicit formulas, recurrences, brute-force enumeration
//! (`oracle`) and, for the inverse Lah matrix, the Möbius function of an
//! explicit poset (`poset`).

pub mod matrix;
pub mod numbers;
pub mod oracle;
pub mod poset;
pub mod report;
pub mod riordan;
pub mod sequences;
pub mod series;
pub mod sizeset;

pub use matrix::TriangularMatrix;
pub use report::IdentityReport;
pub use riordan::{ExpRiordan, LahPolynomial};
pub use series::ExactSeries;
pub use sizeset::{parse_sizeset, SizeSet};
