//! Gaussian-process regression surrogate (Matérn 5/2 ARD, Cholesky based).

mod hyper;
mod kernel;
mod linalg;
mod model;

pub use kernel::{
    kernel_eval, KernelParams, DEFAULT_NOISE, LENGTHSCALE_MAX, LENGTHSCALE_MIN, NOISE_MAX,
    NOISE_MIN, SIGNAL_MAX, SIGNAL_MIN,
};
pub use linalg::{cholesky, solve_lower, solve_upper_transposed};
pub use model::{fit, GpConfig, GpModel};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GpError {
    #[error("invalid kernel parameters: {0}")]
    InvalidParams(String),
    #[error("no training data")]
    EmptyData,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("design bounds must be finite with lo < hi")]
    InvalidBounds,
    #[error("training data must be finite")]
    NonFinite,
    #[error("training rows {0} and {1} coincide")]
    DuplicateInput(usize, usize),
    #[error("Gram matrix not positive definite after jitter escalation")]
    NotPositiveDefinite,
}
