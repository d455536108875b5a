use thiserror::Error;

/// Failures raised by the numeric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },

    #[error("log-gamma evaluated at a pole (s = {0})")]
    Pole(f64),

    #[error("invalid configuration: {0}")]
    Configuration(String),

    #[error("accuracy target missed: estimated error {estimate:e} exceeds {tolerance:e}")]
    Accuracy { estimate: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
