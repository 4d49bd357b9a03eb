use thiserror::Error;

/// Errors shared by the numerical kernels and scenario drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A result would exceed the floating-point range (e.g. exp of a large
    /// positive real part). Carries the offending exponent/magnitude.
    #[error("overflow: magnitude exponent {0} exceeds the f64 range")]
    Overflow(f64),

    /// Input outside the documented domain of an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An iterative or adaptive scheme failed its convergence criterion.
    /// `delta` is the last observed change/residual.
    #[error("no convergence: residual {delta} after {detail}")]
    NonConvergence { delta: f64, detail: String },

    /// A linear solve hit a (numerically) singular pivot.
    #[error("singular system: pivot magnitude {0} at row {1}")]
    SingularPivot(f64, usize),

    /// Configuration file / parameter errors (CLI layer).
    #[error("config error: {0}")]
    Config(String),

    /// Filesystem or serialization failure in the CLI layer.
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
