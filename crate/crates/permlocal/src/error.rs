//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("word is not a permutation of 1..=n")]
    NotAPermutation,
    #[error("values must be distinct")]
    DuplicateValues,
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("the empty pattern is not allowed here")]
    EmptyPattern,
    #[error("the empty host permutation is not allowed here")]
    EmptyHost,
    #[error("avoidance queries with |rho| >= 4 are only supported for |sigma| <= 20")]
    AvoidanceQueryTooLarge,
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("root index must lie in [1, n]")]
    BadRoot,
    #[error("order word is not a permutation")]
    BadOrderWord,
    #[error("family of restrictions is not consistent")]
    InconsistentFamily,
    #[error("in-order traversal is only defined for binary trees")]
    InOrderOnOrderedTree,
    #[error("vertex not in tree")]
    VertexNotInTree,
    #[error("word is not a Dyck word")]
    NotADyckWord,
    #[error("permutation contains {0}")]
    ClassViolation(&'static str),
    #[error("supported range is {0}")]
    OutOfSupportedRange(&'static str),
    #[error("marginals do not sum to 1 within tolerance")]
    BadMarginals,
    #[error("{0}")]
    InvalidArgument(String),
}
