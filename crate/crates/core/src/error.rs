use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),
    #[error("invalid index list `{0}`: expected comma-separated non-negative integers")]
    ParseIndex(String),
    #[error("index list must contain at least one exponent")]
    EmptyIndex,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable sets differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("operation requires depth at least {min}, got {got}")]
    DepthTooSmall { min: usize, got: usize },
    #[error("argument must be non-zero: {0}")]
    ZeroArgument(&'static str),
    #[error("polynomial #{0} has a non-zero constant term")]
    ConstantTerm(usize),
    #[error("expected {expected} arguments, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Invalid(String),
}
