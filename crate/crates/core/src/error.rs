use thiserror::Error;

use crate::geom::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Scenario or argument violates a documented invariant.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Edge cycles could not be closed: an endpoint has no continuation.
    #[error("dangling endpoint at ({x}, {y}): {detail}", x = .at.x, y = .at.y)]
    Dangling { at: Point, detail: String },

    #[error("cycle not closed: gap of {gap:e} m after ({x}, {y})", x = .at.x, y = .at.y)]
    OpenCycle { at: Point, gap: f64 },

    /// A request would exceed the brute-force limits of the oracle.
    #[error("refused: {0}")]
    LimitExceeded(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "input_invalid",
            Error::Dangling { .. } | Error::OpenCycle { .. } => "structure",
            Error::LimitExceeded(_) => "limit_exceeded",
            Error::Validation(_) => "validation_failed",
            Error::Io(_) => "io",
            Error::Json(_) => "input_invalid",
        }
    }
}
