use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("expected {expected} indices, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("vector {0} is zero")]
    ZeroVector(usize),

    #[error("index {index} out of range for a configuration of {count} vectors")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("cross-ratio denominator vanishes")]
    DegenerateCrossRatio,

    #[error("no generic configuration found after {attempts} attempts; try a larger coefficient bound")]
    RetryBudget { attempts: usize },

    #[error("slot {0} is empty")]
    EmptySlot(usize),

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },

    #[error("bracket {0} has repeated labels")]
    DegenerateBracket(String),

    #[error("expected weight {expected}, got {got}")]
    WrongWeight { expected: String, got: usize },

    #[error("expression does not reduce to weight one: {0}")]
    NotReducible(String),

    #[error("configuration is not generic: subset {0:?} is dependent")]
    NonGeneric(Vec<usize>),

    #[error("pole: {symbol} vanishes{}", at.map(|t| format!(" at t = {t}")).unwrap_or_default())]
    Pole { symbol: String, at: Option<f64> },

    #[error("invalid path: {0}")]
    Path(String),

    #[error("quadrature budget exhausted after {panels} panels")]
    Budget { panels: usize },

    #[error("singular argument: {0}")]
    Singular(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Path(_) => 2,
            Error::Pole { .. } => 3,
            Error::Budget { .. } => 4,
            _ => 5,
        }
    }
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
