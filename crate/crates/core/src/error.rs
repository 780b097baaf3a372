use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,

    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,

    #[error("point is already a root (|p(z0)| = {abs_p:e})")]
    AlreadyAtRoot { abs_p: f64 },

    /// gamma = delta = 0, which only happens for u = 0.
    #[error("gamma and delta are both zero; no descent angle exists")]
    DegenerateDirection,

    #[error("expected {expected} roots, got {got}")]
    RootCountMismatch { expected: usize, got: usize },

    #[error("no decrease of |p|^2 after {backtracks} backtracks")]
    Stall { backtracks: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
