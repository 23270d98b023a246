//! Error type shared by all modules of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// One-line form contains the same value twice.
    #[error("not a permutation of 1..={size}: value {value} appears more than once")]
    DuplicateValue { size: usize, value: usize },

    /// One-line or cycle form mentions a value outside 1..=size.
    #[error("not a permutation of 1..={size}: value {value} is out of range")]
    ValueOutOfRange { size: usize, value: usize },

    /// Binary operation on permutations of different sizes.
    #[error("size mismatch: permutations act on {left} and {right} points")]
    SizeMismatch { left: usize, right: usize },

    /// Text that is neither a one-line form nor a product of cycles.
    #[error("cannot parse permutation from {input:?}: {reason}")]
    Parse { input: String, reason: String },

    /// Exhaustive enumeration request beyond the configured cap.
    #[error(
        "enumeration of S_{size} refused: {size}! = {factorial} permutations exceeds the cap of {cap} points"
    )]
    EnumerationCapExceeded {
        size: usize,
        factorial: String,
        cap: usize,
    },

    /// Two front elements share a cycle where a separated permutation is required.
    #[error("permutation is not separated on 1..={front}: elements {a} and {b} share a cycle")]
    NotSeparated { front: usize, a: usize, b: usize },

    /// A grouping that is not a valid ordered set partition of the front cycles.
    #[error("invalid grouping: {0}")]
    InvalidGrouping(String),

    /// Parameters outside the domain of an operation.
    #[error("parameters out of domain: {0}")]
    Domain(String),
}
