use std::io;

use thiserror::Error;

/// Failures of the sweep harness and the command-line tools.
#[derive(Debug, Error)]
pub enum ExperimentError {
    /// The configuration is malformed.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    /// A requested size exceeds the supported desk scale.
    #[error("N = {n} exceeds the supported limit {limit} for this mode (pass --allow-large to override)")]
    ResourceGuard {
        /// Requested size.
        n: usize,
        /// Ceiling for the mode.
        limit: usize,
    },
    /// A numerical routine failed.
    #[error(transparent)]
    Core(#[from] eigalign_core::Error),
    /// Reading or writing failed.
    #[error(transparent)]
    Io(#[from] io::Error),
    /// Malformed CSV.
    #[error(transparent)]
    Csv(#[from] csv::Error),
    /// Malformed JSON.
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    /// The worker pool could not be created.
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl ExperimentError {
    /// Process exit code: 2 for invalid input, 3 for resource-guard
    /// rejections, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        use eigalign_core::Error as E;
        match self {
            Self::InvalidConfig(_) => 2,
            Self::ResourceGuard { .. } => 3,
            Self::Core(
                E::InvalidDimension(_)
                | E::InvalidParameter { .. }
                | E::SizeMismatch { .. }
                | E::NotAPermutation,
            ) => 2,
            _ => 1,
        }
    }
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, ExperimentError>;
