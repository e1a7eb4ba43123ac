use crate::algebra::{AlgebraError, Poly, Rational};
use crate::master::ModeError;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("F(-{n}, {q}; u) is undefined: the Pochhammer symbol ({q})_{k} vanishes")]
    Obstruction { n: u64, q: Rational, k: u64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("{what} is not a solution; residual {}", .residual.display_in("x"))]
    NotASolution { what: String, residual: Poly },
    #[error("check {check} failed: {detail}")]
    CheckFailed { check: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
