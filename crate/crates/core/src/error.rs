use thiserror::Error;

use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a field, got {0}")]
    UnsupportedField(FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid prime modulus {0}: must be an odd prime below 2^32")]
    InvalidModulus(u64),
    #[error("grading violation: parity({k}) != parity({i}) + parity({j})")]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("action is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("subspace is not closed: {0}")]
    NotClosed(String),
    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("wrong ambient: {0}")]
    WrongAmbient(String),
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("index out of range: {0}")]
    IndexError(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
