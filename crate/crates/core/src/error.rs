use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("unknown symbol {0}")]
    UnknownSymbol(String),

    #[error("no derivative rule for {function} with respect to {symbol}")]
    MissingRule { function: String, symbol: String },

    #[error("evaluation failed: {0}")]
    Eval(String),

    #[error("negative power of a non-monomial expression is not supported")]
    NonPolynomialPower,

    #[error("basis mismatch: {0}")]
    Basis(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("order error: {0}")]
    Order(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("momentum contract violated: {0}")]
    Momentum(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
