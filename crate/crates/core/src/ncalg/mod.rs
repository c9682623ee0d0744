//! The truncated free power-series ring `Q<<x_1, .., x_n>>`.
//!
//! Variables are the Magnus variables `x_i = t_i - 1`. Besides ring
//! arithmetic this module provides the tilde/bar/hat involutions, the cyclic
//! quotient (words up to rotation) and abelianization.

mod matrix;
mod series;
mod word;

pub use matrix::NCMatrix;
pub(crate) use series::write_terms;
pub use series::{bar_variable, CyclicSeries, Involution, NCSeries};
pub use word::Word;
