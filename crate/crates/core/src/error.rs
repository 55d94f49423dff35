//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("ambient dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),

    #[error("{what} = {got} out of range 0..={max}")]
    IndexOutOfRange {
        what: &'static str,
        got: i64,
        max: i64,
    },

    #[error("vector has norm {norm}, not a unit vector")]
    NotUnitVector { norm: f64 },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid rational: {0}")]
    InvalidRational(String),

    #[error("invalid index parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "argument {arg} exceeds the power-series validity cap {cap}; \
         this evaluator does not cover the large-argument regime"
    )]
    SeriesCapExceeded { arg: f64, cap: f64 },

    #[error("gamma argument {0} is not positive; identity outside its stated validity")]
    GammaArgNotPositive(String),

    #[error(
        "insufficient Taylor data for the requested expansion: \
         requested M = {requested}, achievable M = {achievable}"
    )]
    InsufficientTaylorData { requested: usize, achievable: i64 },

    #[error(
        "quadrature error estimate {estimate:.3e} exceeds tolerance {tol:.3e} \
         (best value {value:.17e})"
    )]
    QuadratureTolerance { value: f64, estimate: f64, tol: f64 },

    #[error(
        "radial profile does not decay below 1e-16 of its peak by the truncation radius {radius}"
    )]
    ProfileDecay { radius: f64 },

    #[error("internal invariant breached: {0}")]
    Internal(String),
}
