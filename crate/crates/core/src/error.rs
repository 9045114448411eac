use thiserror::Error;

/// Errors raised by constructors and checks when inputs violate a contract.
///
/// Failed inequalities are never errors: they are reported through
/// [`CheckReport`](crate::report::CheckReport).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} is out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("{0} must be nonzero")]
    Zero(&'static str),

    #[error("d = {0} is not squarefree")]
    NotSquarefree(u64),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("elements are not pairwise distinct: positions {0} and {1} coincide")]
    NotDistinct(usize, usize),

    #[error("{0}")]
    NotDivisible(String),

    #[error("need at least {needed} elements, got {got} (m < 2)")]
    TooFew { needed: usize, got: usize },

    #[error("premise failed: {0}")]
    PremiseFailed(String),

    #[error("point ({x}, {y}) is not on X^2 + {d}Y^2 = {r}")]
    OffConic {
        x: String,
        y: String,
        d: u64,
        r: String,
    },

    #[error("request too large: {0}")]
    TooLarge(String),

    #[error("matrix is not square: {0}")]
    NotSquare(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        detail: detail.into(),
    }
}
