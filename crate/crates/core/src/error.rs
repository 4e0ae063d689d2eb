use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable `{0}` has no assigned value")]
    MissingVariable(String),

    #[error("polynomial is not symmetric in a, b, c")]
    NotSymmetric,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} not found")]
    NotFound(String),

    #[error("`{0}` is not a q-identity")]
    NotQIdentity(String),

    #[error("pole encountered at {at}")]
    PoleEncountered { at: String },

    #[error("denominator vanished at {at}")]
    DenominatorVanished { at: String },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),
}
