//! Exact counting of disjoint pairs in uniform set families and permutation
//! families, with the closed forms, bounds and inclusion–exclusion engines that
//! describe them, and brute-force oracles to check each one at small scale.

pub mod config;
pub mod eigen;
pub mod error;
pub mod exactcomb;
pub mod intgraph;
pub mod oracle;
pub mod permfam;
pub mod report;
pub mod setfam;
pub mod structcount;
pub mod suite;

pub use error::{Error, Result};
pub use exactcomb::{BigNat, BigRat};
