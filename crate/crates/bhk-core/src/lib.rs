//! Exact-arithmetic Kovacic analysis of the Schwarzschild perturbation master
//! equation.
//!
//! The crate builds the master equation for scalar, electromagnetic and
//! gravitational perturbations, runs the `n = 1` and `n = 2` branches of
//! Kovacic's algorithm on it, and checks every surviving candidate: the two
//! closed-form solutions at the algebraically special frequencies, their
//! expansions in truncated Kummer and associated Laguerre bases, and the
//! determinant evidence against the remaining candidates.
//!
//! All arithmetic is exact. The mass is fixed to `M = 1`; a solution for
//! general `M` follows by rescaling `r -> r/M` and `s -> M s`.

pub mod algebra;
pub mod auxode;
mod error;
pub mod evidence;
pub mod hautot;
pub mod kovacic;
pub mod master;

pub use algebra::{q, Poly, Rational};
pub use error::{Error, Result};
