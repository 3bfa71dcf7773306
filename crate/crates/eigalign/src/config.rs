//! Sweep configuration and validation.

use std::path::PathBuf;

use crate::error::{ExperimentError, Result};

/// Largest `N` accepted for EIG1 sweeps without an override.
pub const EIG1_MAX_N: usize = 2000;
/// Largest `N` accepted for toy-model sweeps without an override.
pub const TOY_MAX_N: usize = 100_000;

/// What a sweep estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Mean EIG1 overlap on planted instances.
    Eig1,
    /// Monte Carlo estimate of `p(N, s)`.
    ToyMc,
    /// Quadrature evaluation of `p(N, s)`.
    ToyAnalytic,
}

impl Mode {
    /// `σ·N^{7/6}` for EIG1, `s·N` for the toy model.
    pub fn scale(self, n: usize) -> f64 {
        match self {
            Mode::Eig1 => (n as f64).powf(7.0 / 6.0),
            Mode::ToyMc | Mode::ToyAnalytic => n as f64,
        }
    }

    fn size_limit(self) -> usize {
        match self {
            Mode::Eig1 => EIG1_MAX_N,
            Mode::ToyMc | Mode::ToyAnalytic => TOY_MAX_N,
        }
    }
}

/// Noise levels, raw or in the scaled coordinate of [`Mode::scale`].
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseGrid {
    /// `σ` or `s` directly.
    Raw(Vec<f64>),
    /// `σ·N^{7/6}` or `s·N`.
    Scaled(Vec<f64>),
}

impl NoiseGrid {
    fn values(&self) -> &[f64] {
        match self {
            NoiseGrid::Raw(v) | NoiseGrid::Scaled(v) => v,
        }
    }

    /// `(raw, scaled)` pairs for size `n`.
    pub fn resolve(&self, mode: Mode, n: usize) -> Vec<(f64, f64)> {
        let k = mode.scale(n);
        match self {
            NoiseGrid::Raw(v) => v.iter().map(|&r| (r, r * k)).collect(),
            NoiseGrid::Scaled(v) => v.iter().map(|&x| (x / k, x)).collect(),
        }
    }
}

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// Comma-separated values with a fixed header.
    #[default]
    Csv,
    /// A JSON array of row objects.
    Json,
}

/// A full sweep specification.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Estimator.
    pub mode: Mode,
    /// Sizes `N`, outer loop.
    pub sizes: Vec<usize>,
    /// Noise levels, inner loop.
    pub noise: NoiseGrid,
    /// Replicates per cell (ignored by [`Mode::ToyAnalytic`]).
    pub replicates: u64,
    /// Master seed; every replicate stream is derived from it.
    pub master_seed: u64,
    /// Worker threads (`None` uses all available cores).
    pub threads: Option<usize>,
    /// Destination (`None` for standard output).
    pub output_path: Option<PathBuf>,
    /// Encoding of the output.
    pub output_format: Format,
    /// Lift the desk-scale size ceilings.
    pub allow_large: bool,
    /// Record wall-clock time per replicate; when off the column is 0 so
    /// repeated runs are byte-identical.
    pub record_timing: bool,
}

impl SweepConfig {
    /// A configuration with one thread, no output path, CSV and timing on.
    pub fn new(
        mode: Mode,
        sizes: Vec<usize>,
        noise: NoiseGrid,
        replicates: u64,
        master_seed: u64,
    ) -> Self {
        Self {
            mode,
            sizes,
            noise,
            replicates,
            master_seed,
            threads: None,
            output_path: None,
            output_format: Format::Csv,
            allow_large: false,
            record_timing: true,
        }
    }

    /// Checks the invariants and the resource guard.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(ExperimentError::InvalidConfig(m.to_string()));
        if self.sizes.is_empty() {
            return bad("sizes must be nonempty");
        }
        let min_n = if self.mode == Mode::ToyMc { 1 } else { 2 };
        if let Some(n) = self.sizes.iter().find(|&&n| n < min_n) {
            return Err(ExperimentError::InvalidConfig(format!(
                "size {n} is below the minimum {min_n}"
            )));
        }
        if self.noise.values().is_empty() {
            return bad("noise grid must be nonempty");
        }
        if self
            .noise
            .values()
            .iter()
            .any(|v| !v.is_finite() || *v < 0.0)
        {
            return bad("noise values must be finite and nonnegative");
        }
        if self.mode != Mode::ToyAnalytic && self.replicates == 0 {
            return bad("replicates must be at least 1");
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1");
        }
        if !self.allow_large {
            let limit = self.mode.size_limit();
            if let Some(&n) = self.sizes.iter().find(|&&n| n > limit) {
                return Err(ExperimentError::ResourceGuard { n, limit });
            }
        }
        Ok(())
    }
}
