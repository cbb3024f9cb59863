use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Callers that only need to branch on broad categories (CLI exit codes,
/// retry-with-looser-tolerance loops) can match on the variant; the display
/// form carries the quantitative detail.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid input (bad JSON shape, empty coefficient list,
    /// non-finite numbers, inconsistent options).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An index is outside the range supported by the data at hand.
    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// Two objects that must agree in size do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Adaptive quadrature exhausted its refinement budget above the
    /// requested tolerance. `achieved` is the error estimate it got down to.
    #[error("quadrature did not converge: requested {requested:e}, achieved {achieved:e}")]
    QuadratureNonConvergence { requested: f64, achieved: f64 },

    /// The density is not almost-everywhere positive with integrable log,
    /// so no Szego function (and no factorized inverse) exists.
    #[error("Szego condition fails: {0}")]
    SzegoViolation(String),

    /// A sampled density value is zero or negative.
    #[error("density is not strictly positive: value {value:e} at t = {at}")]
    NotPositive { value: f64, at: f64 },

    /// A finite section failed its Cholesky factorization.
    #[error("matrix is not positive definite: pivot {pivot:e} at index {index}")]
    NotPositiveDefinite { pivot: f64, index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
