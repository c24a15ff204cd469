use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),

    #[error("verification failed on trial {trial} (seed {seed}): {detail}; instance written to {}", dump.display())]
    Verification { trial: usize, seed: u64, detail: String, dump: PathBuf },

    #[error(transparent)]
    Select(#[from] softselect::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    /// Process exit status: 2 for a failed verification, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Verification { .. } => 2,
            _ => 1,
        }
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(msg.into())
}
