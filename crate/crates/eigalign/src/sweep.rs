//! Grid sweeps over sizes and noise levels.

use std::time::Instant;

use eigalign_core::align::eig1;
use eigalign_core::randmat::PlantedInstance;
use eigalign_core::rng::{derive_seed, derive_stream, Purpose};
use eigalign_core::stats::{mean_ci, ProbabilityEstimate};
use eigalign_core::toymodel::{analytic_p, rank_preserved};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Mode, SweepConfig};
use crate::error::{ExperimentError, Result};

/// One `(N, noise)` cell of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Size `N`.
    pub n: usize,
    /// `σ` (EIG1) or `s` (toy model).
    pub raw_noise: f64,
    /// `σ·N^{7/6}` or `s·N`.
    pub scaled_noise: f64,
    /// Replicates behind the estimate (0 for quadrature rows).
    pub replicates: u64,
    /// Mean overlap or probability estimate.
    pub estimate: f64,
    /// Lower end of the 95% interval.
    pub ci_low: f64,
    /// Upper end of the 95% interval.
    pub ci_high: f64,
    /// Mean wall-clock time per replicate in milliseconds.
    pub mean_runtime_ms: f64,
    /// Master seed of the sweep.
    pub seed: u64,
}

impl SweepRow {
    /// Half the interval width.
    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }
}

/// Rows in sweep order: sizes outer, noise levels inner.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SweepResult {
    /// The cells.
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Statistical monotonicity along the noise grid at each size: no
    /// estimate exceeds an earlier one by more than the sum of their
    /// interval half-widths.
    pub fn is_nonincreasing(&self) -> bool {
        let rows = &self.rows;
        rows.iter().enumerate().all(|(j, later)| {
            rows[..j]
                .iter()
                .filter(|r| r.n == later.n && r.raw_noise <= later.raw_noise)
                .all(|r| later.estimate <= r.estimate + r.half_width() + later.half_width())
        })
    }
}

// Stream id of a cell, independent of its position in the grid.
fn cell_id(n: usize, raw_noise: f64) -> u64 {
    raw_noise.to_bits().rotate_left(21) ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t);
    }
    Ok(b.build()?)
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn cells(config: &SweepConfig) -> Vec<(usize, f64, f64)> {
    config
        .sizes
        .iter()
        .flat_map(|&n| {
            config
                .noise
                .resolve(config.mode, n)
                .into_iter()
                .map(move |(r, s)| (n, r, s))
        })
        .collect()
}

/// EIG1 overlap on planted instances with uniform `π`, one row per cell.
///
/// The estimate is the mean of per-replicate overlaps with a normal 95%
/// interval on those means; a single replicate falls back to a Wilson
/// interval on its `N` coordinate matches.
pub fn run_eig1_sweep(config: &SweepConfig) -> Result<SweepResult> {
    if config.mode != Mode::Eig1 {
        return Err(ExperimentError::InvalidConfig(
            "run_eig1_sweep needs mode eig1".into(),
        ));
    }
    config.validate()?;
    let pool = pool(config.threads)?;
    let mut rows = Vec::new();
    for (n, sigma, scaled) in cells(config) {
        let cell = cell_id(n, sigma);
        let outcomes: Vec<Result<(f64, f64)>> = pool.install(|| {
            (0..config.replicates)
                .into_par_iter()
                .map(|r| {
                    let t = Instant::now();
                    let seed = derive_seed(config.master_seed, Purpose::Eig1, cell, r);
                    let inst = PlantedInstance::from_seed(n, sigma, None, seed)?;
                    let res = eig1(&inst.a, &inst.b)?.with_planted(&inst.pi)?;
                    Ok((res.overlap_vs_planted.unwrap_or(0.0), elapsed_ms(t)))
                })
                .collect()
        });
        let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
        let overlaps: Vec<f64> = outcomes.iter().map(|o| o.0).collect();
        let runtime = outcomes.iter().map(|o| o.1).sum::<f64>() / outcomes.len() as f64;
        let (estimate, ci_low, ci_high) = if overlaps.len() == 1 {
            let matches = (overlaps[0] * n as f64).round() as u64;
            let e = ProbabilityEstimate::from_counts(matches, n as u64)?;
            (e.value, e.ci_low, e.ci_high)
        } else {
            mean_ci(&overlaps, 0.0, 1.0).expect("at least one replicate")
        };
        rows.push(SweepRow {
            n,
            raw_noise: sigma,
            scaled_noise: scaled,
            replicates: config.replicates,
            estimate,
            ci_low,
            ci_high,
            mean_runtime_ms: if config.record_timing { runtime } else { 0.0 },
            seed: config.master_seed,
        });
    }
    Ok(SweepResult { rows })
}

/// Toy-model `p(N, s)` per cell, by Monte Carlo (Wilson interval) or by
/// quadrature (interval = value ± quadrature error, `replicates = 0`).
pub fn run_toy_sweep(config: &SweepConfig) -> Result<SweepResult> {
    if config.mode == Mode::Eig1 {
        return Err(ExperimentError::InvalidConfig(
            "run_toy_sweep needs a toy mode".into(),
        ));
    }
    config.validate()?;
    let pool = pool(config.threads)?;
    let mut rows = Vec::new();
    for (n, s, scaled) in cells(config) {
        let t = Instant::now();
        let (replicates, estimate, ci_low, ci_high) = match config.mode {
            Mode::ToyAnalytic => {
                let r = analytic_p(n, s)?;
                let lo = (r.value - r.error).max(0.0);
                let hi = (r.value + r.error).min(1.0);
                (0, r.value, lo, hi)
            }
            _ => {
                let cell = cell_id(n, s);
                let hits: Result<u64> = pool.install(|| {
                    (0..config.replicates)
                        .into_par_iter()
                        .map(|r| {
                            let mut rng = derive_stream(config.master_seed, Purpose::Toy, cell, r);
                            Ok(u64::from(rank_preserved(n, s, &mut rng)?))
                        })
                        .sum()
                });
                let e = ProbabilityEstimate::from_counts(hits?, config.replicates)?;
                (config.replicates, e.value, e.ci_low, e.ci_high)
            }
        };
        let per = elapsed_ms(t) / replicates.max(1) as f64;
        rows.push(SweepRow {
            n,
            raw_noise: s,
            scaled_noise: scaled,
            replicates,
            estimate,
            ci_low,
            ci_high,
            mean_runtime_ms: if config.record_timing { per } else { 0.0 },
            seed: config.master_seed,
        });
    }
    Ok(SweepResult { rows })
}

/// Dispatches on [`SweepConfig::mode`].
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    match config.mode {
        Mode::Eig1 => run_eig1_sweep(config),
        Mode::ToyMc | Mode::ToyAnalytic => run_toy_sweep(config),
    }
}
