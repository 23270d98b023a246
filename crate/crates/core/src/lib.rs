//! Exact counting of derangement-like permutation classes.
//!
//! The crate provides:
//!
//! - [`permutation`]: permutations of `{1..N}` with canonical cycle
//!   decomposition, parity, and front-block statistics;
//! - [`oracle`]: brute-force enumeration of `S_{r+n}` and exact classification
//!   into the counted families, the ground truth for every identity;
//! - [`split`]: the cycle-splitting map that separates the front elements of a
//!   permutation, its gluing inverse, and exact fiber enumeration;
//! - [`cycle_types`]: cycle-type partitions `(j_1,...,j_r)` and exact-rational
//!   filtered weight sums;
//! - [`sequences`]: closed formulas and recurrences for all counting
//!   sequences, in arbitrary-precision integers;
//! - [`series`]: truncated power series over exact rationals, used to verify
//!   the exponential generating functions of the sequences.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod cycle_types;
pub mod error;
pub mod oracle;
pub mod permutation;
pub mod sequences;
pub mod series;
pub mod split;

pub use error::{Error, Result};
pub use permutation::{CycleDecomposition, Parity, Permutation};
