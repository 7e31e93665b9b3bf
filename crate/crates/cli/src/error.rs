use std::io;
use std::path::PathBuf;

use pcolor_core::conflict::ConflictError;
use pcolor_core::{DriverError, GraphError, GreedyError, PauliError, ValidationError};
use pcolor_core::tuner::TunerError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// The coloring handed to `validate` is not proper.
    pub const INVALID_COLORING: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const ITERATION_LIMIT: i32 = 3;
    pub const BUDGET: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Driver(#[from] DriverError),
    #[error(transparent)]
    Greedy(#[from] GreedyError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Tuner(#[from] TunerError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Driver(DriverError::IterationLimitExceeded { .. }) => exit::ITERATION_LIMIT,
            CliError::Driver(DriverError::Conflict(ConflictError::OutOfMemoryBudget { .. })) => {
                exit::BUDGET
            }
            _ => exit::INPUT,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
