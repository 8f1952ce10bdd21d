use thiserror::Error;

/// Every failure the library can report. Variants are named after the
/// precondition they guard so callers can match on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("arity mismatch for `{name}`: declared {expected}, used with {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("formula is not prenex")]
    NotPrenex,
    #[error("prenex shape does not match {0}")]
    ShapeMismatch(String),
    #[error("target level {target} is below the current level {current}")]
    TargetBelowCurrentLevel { target: String, current: String },
    #[error("contraction needs pair/proj1/proj2 in the signature")]
    PairingSymbolsMissing,
    #[error("formula is not in {0}")]
    NotInClass(String),
    #[error("formula contains a disjunction")]
    ContainsOr,
    #[error("no budget row for {0}")]
    UnknownRow(String),
    #[error("variable capture: `{0}`")]
    VariableCapture(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("scope unsupported: {0}")]
    ScopeUnsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
