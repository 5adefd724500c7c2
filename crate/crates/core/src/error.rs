use thiserror::Error;

use crate::game::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tree construction failed: {0}")]
    Build(String),
    #[error("game is not well formed: {0}")]
    MalformedGame(ValidationReport),
    #[error("invalid game parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("profile does not match game: {0}")]
    Profile(String),
    #[error("information set has zero opponent reach; normalised utilities are undefined")]
    ZeroReach,
    #[error("{count} pure strategies exceeds the cap of {cap}")]
    TooLarge { count: u64, cap: u64 },
    #[error("empty utility vector")]
    EmptyUtilities,
    #[error("strategy file: {0}")]
    StrategyFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code: 2 configuration, 3 I/O, 4 validation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Csv(_) => 3,
            Error::MalformedGame(_)
            | Error::Profile(_)
            | Error::StrategyFile(_)
            | Error::ZeroReach
            | Error::Build(_) => 4,
            Error::InvalidParams(_)
            | Error::Unsupported(_)
            | Error::Config(_)
            | Error::TooLarge { .. }
            | Error::EmptyUtilities => 2,
        }
    }
}
