//! Exact scalars over the rationals and prime fields, and the linear algebra kernel.

mod matrix;
mod scalar;

pub use matrix::{in_span, rank, solve_linear, Matrix};
pub use scalar::{Field, Rational, Scalar};
