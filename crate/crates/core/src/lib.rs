//! Exact, truncated noncommutative power-series invariants of boundary links.
//!
//! A Seifert matrix `A` of an `n`-component boundary link determines
//! `Z_A = A (A - A')^{-1}`. For an admissible series `f(x, z)` in two
//! noncommuting letters the invariant
//!
//! ```text
//! chi_f(A) = tr f(X, Z_A) - tr f(X, I_half)
//! ```
//!
//! lives in the ring of noncommutative power series in the Magnus variables
//! `x_1 .. x_n`, with `X = diag(x_1, .., x_n)` acting blockwise. Everything
//! here is computed with exact rationals at an explicit truncation degree.
//!
//! Module map:
//! - [`ncalg`]: the truncated free power-series ring, its involutions, the
//!   cyclic quotient and abelianization.
//! - [`commalg`]: commutative truncated series and unit matrices over them
//!   (determinant, trace-log, LU).
//! - [`genfun`]: admissible two-letter generating series (the `f` above).
//! - [`seifert`]: Seifert matrices, validation, S-equivalence moves, file IO.
//! - [`chi`]: evaluation of `tr f(X, Z)`, `chi_f`, the torsion polynomial and
//!   the independent block-sum evaluators.
//! - [`selfcheck`]: the randomized property suite behind `chiseries selfcheck`.

pub mod chi;
pub mod commalg;
mod error;
pub mod genfun;
pub mod ncalg;
pub mod random;
pub mod rational;
pub mod seifert;
pub mod selfcheck;

pub use error::{Error, Result};

/// Exact rational coefficient type used throughout.
pub type Q = num_rational::BigRational;
