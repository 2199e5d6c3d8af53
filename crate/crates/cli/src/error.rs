use std::io;

use staged_core::analyze::AnalyzeError;
use staged_core::enumerate::EnumerateError;
use staged_core::ideal::IdealError;
use staged_core::poly::PolyError;
use staged_core::tree::TreeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{0}")]
    Domain(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Syntax(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Syntax { .. } | PolyError::InvalidIdentifier(_) => {
                CliError::Syntax(e.to_string())
            }
            PolyError::NonSquareFreeTerm { .. } | PolyError::NonSquareFreeResult { .. } => {
                CliError::Domain(e.to_string())
            }
        }
    }
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<AnalyzeError> for CliError {
    fn from(e: AnalyzeError) -> Self {
        CliError::Domain(e.to_string())
    }
}
