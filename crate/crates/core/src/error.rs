use thiserror::Error;

/// Errors surfaced by the engines.
///
/// `Unsupported` and `Inconclusive` are honest refusals, not bugs: they mark
/// inputs outside the decidable fragment this crate ships (for example a
/// free-of-infinity base graph that is not of spherical type and has no
/// registered external oracle).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;

impl EngineError {
    /// Prefix the message with a pipeline stage tag, keeping the variant.
    pub fn at_stage(self, stage: &str) -> Self {
        match self {
            EngineError::Parse(m) => EngineError::Parse(format!("[{stage}] {m}")),
            EngineError::Precondition(m) => EngineError::Precondition(format!("[{stage}] {m}")),
            EngineError::Unsupported(m) => EngineError::Unsupported(format!("[{stage}] {m}")),
            EngineError::Inconclusive(m) => EngineError::Inconclusive(format!("[{stage}] {m}")),
            EngineError::CapExceeded(m) => EngineError::CapExceeded(format!("[{stage}] {m}")),
        }
    }
}
