use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A coordinate or parameter lies outside its admissible range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A mathematical precondition on the arguments is violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested improper integral does not converge.
    #[error("divergent integral: p - q - 1 = {0} must be positive (and q > -1)")]
    DivergentIntegral(f64),

    /// Input data failed structural validation (positivity, mesh size, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// The operator -div_g(a grad) + b is not coercive.
    #[error("operator not coercive: lambda_min = {lambda_min:.6e}")]
    NotCoercive { lambda_min: f64 },

    /// An iterative method exhausted its iteration budget.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Backtracking line search could not find an acceptable step.
    #[error("line search failed: {0}")]
    StepSize(String),

    /// Quadrature did not self-converge at the resolution cap.
    #[error("quadrature accuracy: {0}")]
    Accuracy(String),

    /// Least-squares fit is numerically unreliable.
    #[error("ill-conditioned fit: condition number {0:.3e}")]
    IllConditionedFit(f64),

    /// A caller broke an API contract (e.g. nonzero boundary entries).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A run configuration could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
