use std::io;

/// Errors surfaced by the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum GrtError {
    /// Malformed input file or arguments.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Core(#[from] grt_core::Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
    #[error("{0}")]
    Unsupported(String),
}

impl GrtError {
    /// 3 for parse errors, 2 for every failed precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            GrtError::Parse(_) => 3,
            GrtError::Core(grt_core::Error::InvalidGraph(_)) => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for GrtError {
    fn from(e: serde_json::Error) -> Self {
        GrtError::Parse(e.to_string())
    }
}

pub type Result<T, E = GrtError> = std::result::Result<T, E>;
