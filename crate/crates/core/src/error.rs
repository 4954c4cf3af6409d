use num_complex::Complex64;
use thiserror::Error;

/// Errors raised anywhere in the geometry and energetics pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("singular point at w = {0}")]
    SingularPoint(Complex64),

    #[error("point w = {0} lies outside the domain")]
    DomainViolation(Complex64),

    #[error("function vanishes on the continuation path near w = {0}")]
    ZeroCrossing(Complex64),

    #[error("no admissible path from {from} to {to}")]
    PathBlocked { from: Complex64, to: Complex64 },

    #[error("non-finite input {0}")]
    NonFinite(Complex64),

    #[error("quadrature did not converge on a path segment (error estimate {0:e})")]
    QuadratureFailed(f64),

    #[error("degenerate Möbius map: ad - bc = 0")]
    DegenerateMoebius,

    #[error("conformal map is not neutral (residual {0:e})")]
    NotNeutral(f64),

    #[error("assembled function is not holomorphic (Cauchy-Riemann residual {0:e})")]
    NotHolomorphic(f64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("neutrality hierarchy violated: {0}")]
    HierarchyViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
