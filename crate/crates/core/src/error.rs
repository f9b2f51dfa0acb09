use thiserror::Error;

/// Errors raised by the numerical and arithmetic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A range argument was empty (e.g. sieving below 2).
    #[error("empty range: {0}")]
    EmptyRange(String),

    /// The requested algorithm cannot evaluate this input exactly.
    #[error("unsupported algorithm: {0}")]
    UnsupportedAlgorithm(String),

    /// A parameter set violated a construction precondition.
    #[error("validation error: {0}")]
    Validation(String),

    /// A finite resource (fresh primes, search space) was exhausted.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An iterative method hit its iteration cap.
    #[error("no convergence after {iterations} iterations (estimate {estimate:e}, residual {residual:e})")]
    Convergence {
        iterations: usize,
        estimate: f64,
        residual: f64,
        last_iterate: Vec<f64>,
    },

    /// A quadrature or series could not certify the requested tolerance.
    #[error("accuracy not reached: estimate {estimate:e}, error bound {bound:e} > tol {tol:e}")]
    Accuracy { estimate: f64, bound: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    /// True for errors caused by a bad input rather than a numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::EmptyRange(_)
                | Error::UnsupportedAlgorithm(_)
                | Error::Validation(_)
                | Error::Capacity(_)
        )
    }
}
