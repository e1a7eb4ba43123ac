//! Exact rational scalars, dense polynomials and fraction-free linear algebra.

mod matrix;
mod poly;
mod rational;

pub use matrix::{poly_determinant, Matrix};
pub use poly::Poly;
pub use rational::{binomial, factorial, pochhammer, q, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("integer {0} is too large to factor by trial division")]
    FactorLimit(String),
}
