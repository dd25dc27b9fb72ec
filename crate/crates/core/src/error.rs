use thiserror::Error;

/// Errors raised by the polyhedral engine and the layers built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller broke a documented precondition (negative scale factor,
    /// a dual direction outside `C^-`, mismatched cones, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Intermediate constraint or piece count exceeded the configured cap.
    #[error("resource cap exceeded in {op}: {count} > {cap}")]
    Resource {
        op: &'static str,
        count: usize,
        cap: usize,
    },

    /// A set declared as an upper set is not closed under `+C`.
    #[error("piece {piece} is not recession-closed under the ordering cone")]
    NotUpperSet { piece: usize },

    /// Invalid ordering cone.
    #[error("invalid cone: {0}")]
    Cone(String),

    /// Textual or JSON input could not be parsed.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
