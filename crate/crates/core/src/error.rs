use thiserror::Error;

use crate::seifert::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("series has nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series constant term is not 1")]
    NotSpecial,
    #[error("x-degree-0 part of the generating series is not exactly 1")]
    NotExtraSpecial,
    #[error("matrix is not congruent to the identity modulo positive degree")]
    NotUnitMatrix,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid Seifert matrix: {}", fmt_violations(.0))]
    InvalidSeifert(Vec<Violation>),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("unbalanced half pattern in block {0}")]
    UnbalancedPattern(usize),
    #[error("generating series known only to x-degree {have}, need {need}")]
    InsufficientTruncation { have: usize, need: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
