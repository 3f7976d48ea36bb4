//! Exact linear algebra over the rationals and prime fields.

mod complex;
mod matrix;
mod scalar;

pub use complex::{ChainComplex, CochainComplex, GradedDims};
pub use matrix::{Matrix, QuotientMap, Rref, SubspaceBasis};
pub use scalar::{Field, Scalar};
