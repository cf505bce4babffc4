use thiserror::Error;

use crate::term::{EqVerdict, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("element of theory `{found}` used in theory `{expected}`")]
    TheoryMismatch { expected: String, found: String },

    #[error("element of algebra `{found}` used in algebra `{expected}`")]
    AlgebraMismatch { expected: String, found: String },

    #[error("unknown combinator `{0}`")]
    UnknownCombinator(String),

    #[error("unfolding of constant `{0}` is not closed")]
    OpenUnfolding(String),

    #[error("constant `{0}` is not in the alphabet")]
    UnknownConstant(String),

    #[error("term is not closed")]
    NotClosed,

    #[error("finite carrier must be non-empty")]
    EmptyCarrier,

    #[error("finite theory too large: carrier {carrier}, arity {arity}")]
    TooLarge { carrier: usize, arity: usize },

    #[error("malformed function table: {0}")]
    BadTable(String),

    #[error("malformed finite map: {0}")]
    BadFinMap(String),

    #[error("no abstraction below arity 0")]
    NoAbstraction,

    #[error("membership check failed: {0}")]
    NotMember(String),

    #[error("membership check inconclusive: {0}")]
    Inconclusive(String),

    #[error("object mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("algebra file: {0}")]
    AlgebraFile(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    /// How a check that failed with this error is recorded: an inconclusive
    /// membership check refutes nothing.
    pub fn verdict(&self) -> EqVerdict {
        match self {
            Error::Inconclusive(_) => EqVerdict::Unknown { steps: 0 },
            _ => EqVerdict::Distinct,
        }
    }
}
