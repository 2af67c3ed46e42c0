use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The input polynomial cannot serve as a base description
    /// (zero, constant, or non-primitive).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Attempted to invert the zero element of the field.
    #[error("cannot invert zero")]
    ZeroInversion,

    /// Inversion failed because the element shares a nonconstant factor with
    /// the minimal polynomial, or a supposedly invertible quantity vanished.
    #[error("non-invertible element: {0}")]
    NonInvertible(String),

    /// A documented precondition of the called operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A bounded search ran out of budget before finding a result.
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),

    /// Exhaustive graph search found no path from the start to the target.
    #[error("no path in witness graph: {0}")]
    NoPath(String),

    /// A path handed to witness reconstruction is not a valid edge sequence.
    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// The requested enumeration would exceed the configured size budget.
    #[error("size budget exceeded: {0}")]
    SizeBudgetExceeded(String),

    /// A witness was not dense enough for digit extraction.
    #[error("density violated: deg p = {deg_p} but need deg p < 2(i-j) = {bound}")]
    DensityViolated { deg_p: usize, bound: usize },

    /// An assembled identity failed its exactness check.
    #[error("validation failed: {0}")]
    ValidationFailed(String),

    /// The membership query needs a larger degree budget than supplied.
    #[error("degree budget too small: {0}")]
    BudgetTooSmall(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    ParseError(String),

    /// The request is outside the supported parameter range.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
