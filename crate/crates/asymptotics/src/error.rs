use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] ffmoments_core::Error),
    #[error("jet division by a series with vanishing constant term")]
    JetDivisionByZero,
    #[error("jet logarithm needs a positive constant term")]
    JetLogDomain,
    #[error("{what}: not converged at degree {degree} (relative change {change:.3e} between N and N+2)")]
    NotConverged { what: String, degree: usize, change: f64 },
    #[error("truncation degree must be >= 4, got {0}")]
    DegreeTooSmall(usize),
    #[error("invalid evaluation point: {0}")]
    InvalidPoint(String),
    #[error("g must be >= 1")]
    GenusTooSmall,
}

pub type Result<T> = std::result::Result<T, Error>;
