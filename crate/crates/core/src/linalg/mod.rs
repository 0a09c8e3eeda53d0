//! Exact fields, dense matrices and linear solving.

mod matrix;
mod scalar;

pub use matrix::{intersect, span_basis, Matrix, SolutionSpace};
pub use scalar::{Field, Scalar};
