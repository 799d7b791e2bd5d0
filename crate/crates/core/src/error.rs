use thiserror::Error;

use crate::catalog::CaseLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational {0:?} (expected p or p/q)")]
    BadRational(String),

    #[error("unknown family {0}")]
    UnknownFamily(String),

    #[error("index of {symbol} does not lie on the lattice of its family")]
    OffLattice { symbol: String },

    #[error("invalid algebra: {0}")]
    InvalidSpec(String),

    /// Any rejection from the `.liealg` reader. `line` and `column` are 1-based.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),

    #[error("missing parameter {0}")]
    MissingParameter(String),

    #[error("{requested} requested but this (lambda, mu) belongs to {actual}")]
    CaseViolation { requested: String, actual: CaseLabel },

    #[error("window too small: unknown bound {actual} (twice-index units) but at least {required} is needed")]
    WindowTooSmall { required: i64, actual: i64 },

    #[error("linear map is undefined on {0}")]
    UndefinedOnSymbol(String),

    #[error("product requires base algebra {expected}, got {actual}")]
    WrongBase { expected: String, actual: String },
}
