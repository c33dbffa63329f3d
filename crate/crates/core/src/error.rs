use thiserror::Error;

use crate::notation::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("conflicting declarations for {pattern}: {existing} then {new}")]
    ConflictingProperty {
        pattern: String,
        existing: String,
        new: String,
    },
    #[error("invalid declaration: {0}")]
    InvalidDeclaration(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("index {name} occurs {count} times in one term (slots {slots:?})")]
    RepeatedIndex {
        name: String,
        count: usize,
        slots: Vec<usize>,
    },
    #[error("index set {0} has no unused names left")]
    IndicesExhausted(String),
    #[error("free indices do not match: {0}")]
    FreeIndexMismatch(String),
    #[error("{0} carries no tableau symmetry")]
    NoTableau(String),
    #[error("factors {0} and {1} have no defined commutation rule")]
    UndefinedCommutation(String, String),
    #[error("index {0} not found")]
    IndexNotFound(String),
    #[error("odd number of indices ({0}) cannot be fully contracted")]
    OddIndexCount(usize),
    #[error("basis elements are linearly dependent; null vector {certificate:?}")]
    DependentBasis { certificate: Vec<String> },
    #[error("expression is not in the span of the basis")]
    NotInSpan,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown command @{0}")]
    UnknownCommand(String),
    #[error("unimplemented command @{0}")]
    UnimplementedCommand(String),
    #[error("unknown expression label {0}")]
    UnknownLabel(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
