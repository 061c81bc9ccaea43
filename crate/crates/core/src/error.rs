use thiserror::Error;

/// Errors raised by the analysis, discretization and solver layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the admissible set of the operation.
    #[error("invalid `{param}`: {reason}")]
    Domain { param: &'static str, reason: String },

    /// A 2x2 basis matrix could not be inverted.
    #[error("singular {what} matrix (|det| = {det:e}, condition estimate {condition:e})")]
    SingularBasis {
        what: &'static str,
        det: f64,
        condition: f64,
    },

    /// Sparse factorization hit a zero pivot.
    #[error("matrix is singular: zero pivot at row {row} of {n}")]
    SingularPivot { row: usize, n: usize },

    /// Dense eigensolve would exceed the unknown budget.
    #[error("{unknowns} unknowns exceed the dense eigensolve budget of {budget}; use a coarser mesh")]
    BudgetExceeded { unknowns: usize, budget: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            param,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
