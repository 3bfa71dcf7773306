//! Single-instance reports printed by the command-line tool.

use eigalign_core::align::eig1;
use eigalign_core::perturbation::perturbation_report;
use eigalign_core::randmat::{sample_goe, PlantedInstance};
use eigalign_core::rng::{derive_stream, Purpose};
use eigalign_core::spectral::{eigenvalues, inverse_gap_sum, scaling_exponent_fit, top_gap};
use eigalign_core::stats::median;
use eigalign_core::toymodel::{analytic_p, critical_limit_p, empirical_p};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ExperimentError, Result};

/// EIG1 on one planted instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eig1Report {
    /// Size.
    pub n: usize,
    /// Noise level.
    pub sigma: f64,
    /// Seed of the instance stream.
    pub seed: u64,
    /// Fraction of coordinates matched to the planted permutation.
    pub overlap: f64,
    /// QAP score of the `+v′₁` candidate.
    pub score_plus: f64,
    /// QAP score of the `−v′₁` candidate.
    pub score_minus: f64,
    /// Whether the `+v′₁` candidate was returned.
    pub chose_plus: bool,
}

/// Runs EIG1 on the instance drawn from `seed` with a uniform planted `π`.
pub fn eig1_report(n: usize, sigma: f64, seed: u64) -> Result<Eig1Report> {
    let inst = PlantedInstance::from_seed(n, sigma, None, seed)?;
    let r = eig1(&inst.a, &inst.b)?.with_planted(&inst.pi)?;
    Ok(Eig1Report {
        n,
        sigma,
        seed,
        overlap: r.overlap_vs_planted.unwrap_or(0.0),
        score_plus: r.score_plus,
        score_minus: r.score_minus,
        chose_plus: r.chose_plus,
    })
}

/// A Monte Carlo estimate of `p(N, s)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToyMcReport {
    /// Size.
    pub n: usize,
    /// Noise level.
    pub s: f64,
    /// Master seed.
    pub seed: u64,
    /// Number of replicates.
    pub replicates: u64,
    /// Point estimate.
    pub value: f64,
    /// Lower Wilson bound.
    pub ci_low: f64,
    /// Upper Wilson bound.
    pub ci_high: f64,
}

/// [`empirical_p`] on the stream derived from `seed`.
pub fn toy_mc_report(n: usize, s: f64, replicates: u64, seed: u64) -> Result<ToyMcReport> {
    let mut rng = derive_stream(seed, Purpose::Toy, 0, 0);
    let e = empirical_p(n, s, replicates, &mut rng)?;
    Ok(ToyMcReport {
        n,
        s,
        seed,
        replicates,
        value: e.value,
        ci_low: e.ci_low,
        ci_high: e.ci_high,
    })
}

/// A quadrature value with its error estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureReport {
    /// Size, for `p(N, s)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Noise level, for `p(N, s)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    /// Scaled noise, for the critical limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// Integral value.
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
}

/// [`analytic_p`]`(n, s)`.
pub fn toy_analytic_report(n: usize, s: f64) -> Result<QuadratureReport> {
    let r = analytic_p(n, s)?;
    Ok(QuadratureReport {
        n: Some(n),
        s: Some(s),
        c: None,
        value: r.value,
        error: r.error,
    })
}

/// [`critical_limit_p`]`(c)`.
pub fn toy_critical_report(c: f64) -> Result<QuadratureReport> {
    let r = critical_limit_p(c)?;
    Ok(QuadratureReport {
        n: None,
        s: None,
        c: Some(c),
        value: r.value,
        error: r.error,
    })
}

/// Serializable copy of [`eigalign_core::perturbation::PerturbationReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationJson {
    /// Size.
    pub n: usize,
    /// Noise level.
    pub sigma: f64,
    /// Seed of the `(A, H)` stream.
    pub seed: u64,
    /// `⟨v₁, v′₁⟩`.
    pub overlap_measured: f64,
    /// `1 − ⟨v₁, v′₁⟩`.
    pub overlap_deficit: f64,
    /// `1 − σ²N^{1/3}/2`.
    pub overlap_predicted: f64,
    /// `‖w‖²`.
    pub w_norm_sq: f64,
    /// `Σ_{i≥2} ⟨Hvᵢ,v₁⟩²/(λ₁−λᵢ)²`.
    pub concentration_stat: f64,
    /// `(1/N) Σ_{i≥2} (λ₁−λᵢ)^{−2}`.
    pub concentration_comparator: f64,
    /// Tangent of the angle between `v₁` and `v′₁`.
    pub effective_s: f64,
}

/// Draws `A` then `H` from the stream of `seed` and reports the
/// perturbation of the top eigenvector under `A + σH`.
pub fn perturb_report(n: usize, sigma: f64, seed: u64) -> Result<PerturbationJson> {
    let mut rng = derive_stream(seed, Purpose::Perturbation, n as u64, 0);
    let a = sample_goe(n, &mut rng)?;
    let h = sample_goe(n, &mut rng)?;
    let r = perturbation_report(&a, &h, sigma)?;
    Ok(PerturbationJson {
        n,
        sigma,
        seed,
        overlap_measured: r.overlap_measured,
        overlap_deficit: r.overlap_deficit,
        overlap_predicted: r.overlap_predicted,
        w_norm_sq: r.w_norm_sq,
        concentration_stat: r.concentration_stat,
        concentration_comparator: r.concentration_comparator,
        effective_s: r.effective_s,
    })
}

/// Medians over GOE samples of one size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSummary {
    /// Size.
    pub n: usize,
    /// Number of samples.
    pub trials: u64,
    /// Median `λ₁`.
    pub lambda1: f64,
    /// Median `λ₁ − λ₂`.
    pub top_gap: f64,
    /// Median `N^{2/3}(λ₁ − λ₂)`.
    pub scaled_top_gap: f64,
    /// Median `Σ_{i≥2} (λ₁−λᵢ)^{−1}`.
    pub inverse_gap_sum_1: f64,
    /// Median `Σ_{i≥2} (λ₁−λᵢ)^{−2}`.
    pub inverse_gap_sum_2: f64,
    /// Median `Σ_{i≥2} (λ₁−λᵢ)^{−4}`.
    pub inverse_gap_sum_4: f64,
}

/// Power-law exponents of the medians against `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralExponents {
    /// Exponent of the top gap.
    pub top_gap: f64,
    /// Exponent of the `p = 1` sum.
    pub inverse_gap_sum_1: f64,
    /// Exponent of the `p = 2` sum.
    pub inverse_gap_sum_2: f64,
    /// Exponent of the `p = 4` sum.
    pub inverse_gap_sum_4: f64,
}

/// Spectral statistics across sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralStatsReport {
    /// Master seed.
    pub seed: u64,
    /// One summary per size.
    pub sizes: Vec<SpectralSummary>,
    /// Fitted exponents, when at least two sizes were given.
    pub exponents: Option<SpectralExponents>,
}

/// Eigenvalue statistics of `trials` GOE samples per size, each sample on
/// its own derived stream.
pub fn spectral_stats(sizes: &[usize], trials: u64, seed: u64) -> Result<SpectralStatsReport> {
    if sizes.is_empty() || sizes.iter().any(|&n| n < 2) {
        return Err(ExperimentError::InvalidConfig(
            "sizes must be nonempty and at least 2".into(),
        ));
    }
    if trials == 0 {
        return Err(ExperimentError::InvalidConfig(
            "trials must be at least 1".into(),
        ));
    }
    let mut summaries = Vec::new();
    for &n in sizes {
        let samples: Vec<[f64; 5]> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = derive_stream(seed, Purpose::Spectral, n as u64, t);
                let e = eigenvalues(&sample_goe(n, &mut rng)?)?;
                Ok([
                    e[0],
                    top_gap(&e),
                    inverse_gap_sum(&e, 1)?,
                    inverse_gap_sum(&e, 2)?,
                    inverse_gap_sum(&e, 4)?,
                ])
            })
            .collect::<Result<_>>()?;
        let med = |k: usize| {
            median(&samples.iter().map(|s| s[k]).collect::<Vec<_>>()).unwrap_or(f64::NAN)
        };
        let gap = med(1);
        summaries.push(SpectralSummary {
            n,
            trials,
            lambda1: med(0),
            top_gap: gap,
            scaled_top_gap: median(
                &samples
                    .iter()
                    .map(|s| s[1] * (n as f64).powf(2.0 / 3.0))
                    .collect::<Vec<_>>(),
            )
            .unwrap_or(f64::NAN),
            inverse_gap_sum_1: med(2),
            inverse_gap_sum_2: med(3),
            inverse_gap_sum_4: med(4),
        });
    }
    let distinct = {
        let mut s = sizes.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len()
    };
    let exponents = if distinct >= 2 {
        let fit = |f: fn(&SpectralSummary) -> f64| {
            let pts: Vec<(f64, f64)> = summaries.iter().map(|s| (s.n as f64, f(s))).collect();
            scaling_exponent_fit(&pts).map(|p| p.exponent)
        };
        Some(SpectralExponents {
            top_gap: fit(|s| s.top_gap)?,
            inverse_gap_sum_1: fit(|s| s.inverse_gap_sum_1)?,
            inverse_gap_sum_2: fit(|s| s.inverse_gap_sum_2)?,
            inverse_gap_sum_4: fit(|s| s.inverse_gap_sum_4)?,
        })
    } else {
        None
    };
    Ok(SpectralStatsReport {
        seed,
        sizes: summaries,
        exponents,
    })
}
