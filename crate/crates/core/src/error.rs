use thiserror::Error;

use crate::multipoly::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("polynomials live over different variable tables")]
    VarMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("expected a linear form, got `{0}`")]
    NotLinear(String),
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a matrix factorization: ({product})[{row}][{col}] differs from f*I")]
    NotFactorization { product: &'static str, row: usize, col: usize },
    #[error("determinant is zero")]
    ZeroDeterminant,
    #[error("determinant is not a unit times a power of f: {0}")]
    NotPowerOfF(String),
    #[error("invalid elementary operation: {0}")]
    InvalidOp(String),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
