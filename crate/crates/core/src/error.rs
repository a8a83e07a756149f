use thiserror::Error;

use crate::ring::BiDegree;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("mixed bidegree: {first} has bidegree {first_bidegree} but {second} has bidegree {second_bidegree}")]
    MixedBidegree {
        first: String,
        first_bidegree: BiDegree,
        second: String,
        second_bidegree: BiDegree,
    },

    #[error("bidegree mismatch: expected {expected}, found {found}")]
    BidegreeMismatch { expected: BiDegree, found: BiDegree },

    #[error(
        "bidegree underflow: generator of bidegree {generator} does not divide target {target}"
    )]
    BidegreeUnderflow {
        generator: BiDegree,
        target: BiDegree,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("cannot normalize the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid parametrization: {0}")]
    InvalidParametrization(String),

    #[error("Hilbert function not stabilized over the window: values {values:?}")]
    NotStabilized { values: Vec<usize> },

    #[error("condition {condition} failed: {witness}")]
    ConditionFailed { condition: String, witness: String },

    #[error("moving plane echelon form failed: x3-block rank {rank} < {expected}")]
    PlaneProjectionDeficient { rank: usize, expected: usize },

    #[error("projection of moving quadrics onto the pivot columns is singular: {0}")]
    SingularProjection(String),

    #[error("interpolated determinant has degree {found}, expected at most {expected}")]
    DegreeExceeded { found: usize, expected: usize },

    #[error("determinant backends disagree")]
    BackendMismatch,

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
