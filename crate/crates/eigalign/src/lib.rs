//! Sweeps, file formats and command-line plumbing on top of
//! [`eigalign_core`].

#![warn(missing_docs)]

pub mod config;
mod error;
pub mod output;
pub mod reports;
pub mod sweep;

pub use config::{Format, Mode, NoiseGrid, SweepConfig};
pub use error::{ExperimentError, Result};
pub use output::{emit, read_csv, write_csv, write_json, CSV_HEADER};
pub use sweep::{run_eig1_sweep, run_sweep, run_toy_sweep, SweepResult, SweepRow};
