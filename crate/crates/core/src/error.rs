use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("direction is periodic; no drift vector exists")]
    PeriodicDirection,
    #[error("trajectory is not closed")]
    OpenTrajectory,
    #[error("classification methods disagree: {0}")]
    MethodDisagreement(String),
    #[error("no witness found within depth {0}")]
    NotFoundWithinDepth(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
