use copic_core::CopicError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    /// 0 success, 1 parse/IO, 2 verification or agreement failure, 3 precondition unmet.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 1,
            CliError::Mismatch(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl From<CopicError> for CliError {
    fn from(e: CopicError) -> Self {
        match e {
            CopicError::Domain(_) | CopicError::InvalidInstance(_) | CopicError::ParseCost(_) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(format!("malformed JSON: {e}"))
    }
}
