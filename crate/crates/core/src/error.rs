use thiserror::Error;

use crate::field::{FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("algebras live over different fields ({0} vs {1})")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("table does not satisfy the {0} Leibniz identity")]
    NotLeibniz(&'static str),
    #[error("{0} needs a prime field (enumeration over {1} is impossible)")]
    RequiresFiniteField(&'static str, FieldSpec),
    #[error("cap exceeded: {what} ({requested} > cap {cap})")]
    CapExceeded { what: String, requested: u128, cap: u128 },
    #[error("maximality violated: {0}")]
    MaximalityViolated(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
