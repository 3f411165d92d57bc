use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {n} outside 0..={max}")]
    IndexOutOfRange { n: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("two-particle operator is not swap-symmetric (max deviation {0:e})")]
    NotSwapSymmetric(f64),

    #[error("N = {requested} exceeds the capacity of this path ({cap})")]
    Capacity { requested: usize, cap: usize },

    #[error("state has zero norm; cannot normalize")]
    DegenerateState,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not normalized (trace {0})")]
    NotNormalized(f64),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("integration produced a non-finite state; last valid time {last_valid_time}")]
    IntegrationFailure { last_valid_time: f64 },

    #[error("initial state is a fixed point; use the constant solution instead")]
    FixedPoint,

    #[error("vanishing denominator at t = {t}, x = {x}")]
    Singular { t: f64, x: f64 },

    #[error("non-positive value at index {0} in the fitted tail")]
    NonPositiveTail(usize),

    #[error("fit needs at least 3 tail points, got {0}")]
    InsufficientData(usize),

    #[error("abscissae must be positive and strictly increasing (index {0})")]
    NotIncreasing(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
