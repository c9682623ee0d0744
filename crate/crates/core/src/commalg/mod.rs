//! Truncated commutative power series and unit matrices over them.
//!
//! This is the abelianized side of the theory: determinants, `tr log`, and
//! the LU factorization over the local ring of series with constant term 1.

mod matrix;
mod series;

pub use matrix::CommMatrix;
pub use series::{CommSeries, Monomial};
