use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square: {rows} rows, row {bad_row} has {len} entries")]
    NotSquare { rows: usize, bad_row: usize, len: usize },
    #[error("matrix does not preserve the form diag(1,..,1,-1)")]
    NotPseudoOrthogonal,
    #[error("matrix is not orthochronous: bottom-right entry {0} < 1")]
    NotOrthochronous(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("parameter matrix is not generic: {0}")]
    NonGeneric(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("value not representable in exact arithmetic: {0}")]
    NotExact(String),
    #[error("truncated sum did not converge within {shells} shells (last shell {last})")]
    NonConvergence { shells: usize, last: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Input-level failures (malformed or invalid data), as opposed to
    /// preconditions of a particular evaluation route.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::NotPseudoOrthogonal
                | Error::NotOrthochronous(_)
                | Error::DimensionMismatch(..)
                | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
