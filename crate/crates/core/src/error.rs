use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("normal-form enumeration did not close below path length {bound}")]
    InfiniteDimensional { bound: usize },
    #[error("algebra is not self-injective")]
    NotSelfInjective,
    #[error("endomorphism ring is not split over the rationals: {0}")]
    NonSplitField(String),
    #[error("Serre duality fails for the pair ({x}, {y})")]
    SerreViolation { x: String, y: String },
    #[error("group action is not free: vertex {vertex} is fixed")]
    NonFreeAction { vertex: String },
    #[error("preset does not realize the orbit category: {0}")]
    PresetMismatch(String),
    #[error("{0} is not a direct summand")]
    NotASummand(String),
    #[error("mutation lost rigidity: {0}")]
    RigidityLost(String),
    #[error("no Serre functor available")]
    NoSerre,
    #[error("lift is not unique: {0}")]
    LiftNotUnique(String),
    #[error("equivalence check failed: {0}")]
    EquivalenceFailure(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    ParseError { msg: String, line: usize, column: usize },
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::ParseError { msg: msg.into(), line: 0, column: 0 }
    }

    /// Exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ParseError { .. }
            | Error::UnknownPreset(_)
            | Error::UnknownLabel(_)
            | Error::InvalidInput(_)
            | Error::NotASummand(_)
            | Error::UnsupportedShape(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
