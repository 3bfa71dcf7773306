//! Perturbation of the top eigenvector of `A` under `A + σH`: the
//! first-order expansion, the fixed-point scheme in the eigenbasis of `A`,
//! and the diagnostics comparing matrices with the toy model.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::invalid;
use crate::matrix::{dot, norm};
use crate::spectral::{
    eigen_projections, inverse_gap_sum, leading_pair, top_gap, SpectralDecomposition,
    DEGENERATE_GAP,
};
use crate::{Error, Result, SymmetricMatrix};

/// Default stopping tolerance on `Δₖ`.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 200;
/// Consecutive increases of `Δₖ` treated as divergence.
pub const DIVERGENCE_RUN: usize = 3;

fn check_dims(h: &SymmetricMatrix, spec: &SpectralDecomposition) -> Result<()> {
    if h.n() != spec.n() {
        return Err(Error::SizeMismatch {
            expected: spec.n(),
            found: h.n(),
        });
    }
    Ok(())
}

fn check_gap(spec: &SpectralDecomposition) -> Result<()> {
    let gap = spec.top_gap();
    if spec.n() >= 2 && gap <= DEGENERATE_GAP {
        return Err(Error::DegenerateGap { gap });
    }
    Ok(())
}

/// `m_{i,1} = ⟨H vᵢ, v₁⟩` for every eigenvector `vᵢ` of `A`.
pub fn overlap_projections(h: &SymmetricMatrix, spec: &SpectralDecomposition) -> Result<Vec<f64>> {
    check_dims(h, spec)?;
    let hv1 = h.mul_vec(spec.vector(0))?;
    spec.project(&hv1)
}

/// The full matrix `m = VᵀHV` of `H` in the eigenbasis of `A`, row-major.
pub fn eigenbasis_matrix(h: &SymmetricMatrix, spec: &SpectralDecomposition) -> Result<Vec<f64>> {
    check_dims(h, spec)?;
    let n = spec.n();
    let mut m = vec![0.0; n * n];
    for j in 0..n {
        let hv = h.mul_vec(spec.vector(j))?;
        for i in 0..=j {
            let x = dot(spec.vector(i), &hv);
            m[i * n + j] = x;
            m[j * n + i] = x;
        }
    }
    Ok(m)
}

/// First-order coordinates `θ¹`: `θ₁ = 1`, `θᵢ = σ m_{i,1}/(λ₁ − λᵢ)`.
fn first_order_coords(spec: &SpectralDecomposition, m1: &[f64], sigma: f64) -> Vec<f64> {
    let lambda = spec.eigenvalues();
    let mut theta: Vec<f64> = (0..spec.n())
        .map(|i| sigma * m1[i] / (lambda[0] - lambda[i]))
        .collect();
    theta[0] = 1.0;
    theta
}

/// `v₁ + σ Σ_{i≥2} m_{i,1}/(λ₁ − λᵢ) vᵢ`.
pub fn first_order_eigvec(
    spec: &SpectralDecomposition,
    h: &SymmetricMatrix,
    sigma: f64,
) -> Result<Vec<f64>> {
    check_dims(h, spec)?;
    check_gap(spec)?;
    if sigma == 0.0 {
        return Ok(spec.vector(0).to_vec());
    }
    let m1 = overlap_projections(h, spec)?;
    spec.embed(&first_order_coords(spec, &m1, sigma))
}

/// Iterates and diagnostics of [`picard_solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct PicardState {
    /// Coordinates of the unnormalized eigenvector in the eigenbasis of `A`
    /// (`theta[0] = 1`).
    pub theta: Vec<f64>,
    /// Current eigenvalue iterate `λ₁ᵏ`.
    pub lambda1_k: f64,
    /// `Δₖ = Σ_{i≥2} |θᵢᵏ − θᵢᵏ⁻¹|` for `k = 1, 2, …`.
    pub delta_history: Vec<f64>,
    /// `Sₖ = Σᵢ |θᵢᵏ|`.
    pub s_history: Vec<f64>,
    /// Number of iterations performed.
    pub iterations: usize,
    /// `Δₖ < tol` was reached.
    pub converged: bool,
    /// Stopped because `Δₖ` grew for [`DIVERGENCE_RUN`] consecutive steps
    /// or became non-finite.
    pub diverged: bool,
    /// `‖(A+σH)w′ − λ w′‖ / ‖w′‖` with `λ = λ₁ + σ (mθ)₁`.
    pub residual: f64,
}

impl PicardState {
    /// The iterate `w′ = Σᵢ θᵢ vᵢ` in the original coordinates.
    pub fn eigenvector(&self, spec: &SpectralDecomposition) -> Result<Vec<f64>> {
        spec.embed(&self.theta)
    }
}

/// Fixed-point scheme for the coordinates of the top eigenvector of
/// `A + σH` in the eigenbasis of `A`:
///
/// `θᵢᵏ = σ/(λ₁ᵏ⁻¹ − λᵢ) Σⱼ m_{ij} θⱼᵏ⁻¹` for `i ≥ 2`, `θ₁ᵏ = 1`,
/// `λ₁ᵏ = λ₁ + σ Σⱼ m_{1j} θⱼᵏ⁻¹`, from `θ⁰ = e₁`, `λ₁⁰ = λ₁`.
///
/// Divergence is reported through the state rather than as an error.
pub fn picard_solve(
    spec: &SpectralDecomposition,
    h: &SymmetricMatrix,
    sigma: f64,
    max_iter: usize,
    tol: f64,
) -> Result<PicardState> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(invalid("sigma", "must be nonnegative and finite"));
    }
    if max_iter == 0 {
        return Err(invalid("max_iter", "must be at least 1"));
    }
    check_dims(h, spec)?;
    check_gap(spec)?;
    let m = eigenbasis_matrix(h, spec)?;
    Ok(picard_iterate(spec.eigenvalues(), &m, sigma, max_iter, tol))
}

fn picard_iterate(lambda: &[f64], m: &[f64], sigma: f64, max_iter: usize, tol: f64) -> PicardState {
    let n = lambda.len();
    let mut theta = vec![0.0; n];
    theta[0] = 1.0;
    let mut lambda_k = lambda[0];
    let mut delta_history = Vec::new();
    let mut s_history = Vec::new();
    let (mut converged, mut diverged, mut rising) = (false, false, 0);
    let mut next = vec![0.0; n];
    while delta_history.len() < max_iter {
        let mut delta = 0.0;
        next[0] = 1.0;
        for i in 1..n {
            let t = sigma * dot(&m[i * n..(i + 1) * n], &theta) / (lambda_k - lambda[i]);
            delta += libm::fabs(t - theta[i]);
            next[i] = t;
        }
        lambda_k = lambda[0] + sigma * dot(&m[..n], &theta);
        core::mem::swap(&mut theta, &mut next);
        s_history.push(theta.iter().map(|t| libm::fabs(*t)).sum());
        let previous = delta_history.last().copied();
        delta_history.push(delta);
        if !delta.is_finite() || !lambda_k.is_finite() {
            diverged = true;
            break;
        }
        if delta < tol {
            converged = true;
            break;
        }
        rising = match previous {
            Some(p) if delta > p => rising + 1,
            _ => 0,
        };
        if rising >= DIVERGENCE_RUN {
            diverged = true;
            break;
        }
    }
    let residual = if diverged {
        f64::INFINITY
    } else {
        eigen_residual(lambda, m, sigma, &theta)
    };
    PicardState {
        theta,
        lambda1_k: lambda_k,
        iterations: delta_history.len(),
        delta_history,
        s_history,
        converged,
        diverged,
        residual,
    }
}

// In the eigenbasis `A + σH` is `Λ + σm`.
fn eigen_residual(lambda: &[f64], m: &[f64], sigma: f64, theta: &[f64]) -> f64 {
    let n = lambda.len();
    let mtheta: Vec<f64> = (0..n).map(|i| dot(&m[i * n..(i + 1) * n], theta)).collect();
    let rayleigh = lambda[0] + sigma * mtheta[0];
    let r: Vec<f64> = (0..n)
        .map(|i| (lambda[i] - rayleigh) * theta[i] + sigma * mtheta[i])
        .collect();
    norm(&r) / norm(theta)
}

/// `Σ_{i≥2} m_{i,1}²/(λ₁ − λᵢ)²` together with its deterministic comparator
/// `(1/n) Σ_{i≥2} (λ₁ − λᵢ)^{−2}`.
pub fn concentration_stat(h: &SymmetricMatrix, spec: &SpectralDecomposition) -> Result<(f64, f64)> {
    check_dims(h, spec)?;
    check_gap(spec)?;
    let m1 = overlap_projections(h, spec)?;
    let lambda = spec.eigenvalues();
    let stat = (1..spec.n())
        .map(|i| libm::pow(m1[i] / (lambda[0] - lambda[i]), 2.0))
        .sum();
    Ok((stat, spec.inverse_gap_sum(2)? / spec.n() as f64))
}

/// [`concentration_stat`] from the matrices, without forming all
/// eigenvectors of `A`: only `v₁` and the projections of `Hv₁`.
pub fn concentration_from_matrices(a: &SymmetricMatrix, h: &SymmetricMatrix) -> Result<(f64, f64)> {
    if h.n() != a.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            found: h.n(),
        });
    }
    let v1 = leading_pair(a)?.vector;
    concentration_with_leading(a, h, &v1)
}

fn concentration_with_leading(
    a: &SymmetricMatrix,
    h: &SymmetricMatrix,
    v1: &[f64],
) -> Result<(f64, f64)> {
    let hv1 = h.mul_vec(v1)?;
    let (lambda, m1) = eigen_projections(a, &hv1)?;
    let gap = top_gap(&lambda);
    if lambda.len() >= 2 && gap <= DEGENERATE_GAP {
        return Err(Error::DegenerateGap { gap });
    }
    let stat = (1..lambda.len())
        .map(|i| libm::pow(m1[i] / (lambda[0] - lambda[i]), 2.0))
        .sum();
    Ok((stat, inverse_gap_sum(&lambda, 2)? / lambda.len() as f64))
}

/// Predicted overlap `1 − σ² n^{1/3} / 2`.
pub fn overlap_prediction(sigma: f64, n: usize) -> f64 {
    1.0 - sigma * sigma * libm::cbrt(n as f64) / 2.0
}

/// Tangent of the angle between unit vectors `v1` and `v1_prime`:
/// `‖v′ − ⟨v,v′⟩v‖ / ⟨v,v′⟩`.
pub fn effective_noise(v1: &[f64], v1_prime: &[f64]) -> Result<f64> {
    if v1.len() != v1_prime.len() {
        return Err(Error::SizeMismatch {
            expected: v1.len(),
            found: v1_prime.len(),
        });
    }
    let c = dot(v1, v1_prime);
    if c.is_nan() || c <= 0.0 {
        return Err(invalid(
            "v1_prime",
            "must have positive inner product with v1",
        ));
    }
    let orth: Vec<f64> = v1_prime.iter().zip(v1).map(|(y, x)| y - c * x).collect();
    Ok(norm(&orth) / c)
}

/// Measured and predicted perturbation of the top eigenvector of `A` under
/// `A + σH`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationReport {
    /// Dimension.
    pub n: usize,
    /// Noise level.
    pub sigma: f64,
    /// `⟨v₁, v′₁⟩` with the sign of `v′₁` chosen positive.
    pub overlap_measured: f64,
    /// `1 − ⟨v₁, v′₁⟩`, computed as `‖v₁ − v′₁‖²/2` to avoid cancellation.
    pub overlap_deficit: f64,
    /// [`overlap_prediction`]`(σ, n)`.
    pub overlap_predicted: f64,
    /// `‖w′ − v₁‖²` for `w′ = v′₁/⟨v₁, v′₁⟩`.
    pub w_norm_sq: f64,
    /// `Σ_{i≥2} m_{i,1}²/(λ₁ − λᵢ)²`.
    pub concentration_stat: f64,
    /// `(1/n) Σ_{i≥2} (λ₁ − λᵢ)^{−2}`.
    pub concentration_comparator: f64,
    /// [`effective_noise`]`(v₁, v′₁)`.
    pub effective_s: f64,
}

/// Builds a [`PerturbationReport`] from exact leading eigenpairs of `A` and
/// `A + σH`.
pub fn perturbation_report(
    a: &SymmetricMatrix,
    h: &SymmetricMatrix,
    sigma: f64,
) -> Result<PerturbationReport> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(invalid("sigma", "must be nonnegative and finite"));
    }
    let v1 = &leading_pair(a)?.vector;
    let (concentration_stat, concentration_comparator) = concentration_with_leading(a, h, v1)?;
    let mut v1_prime = leading_pair(&a.add_scaled(h, sigma)?)?.vector;
    if dot(v1, &v1_prime) < 0.0 {
        v1_prime.iter_mut().for_each(|y| *y = -*y);
    }
    let overlap_measured = dot(v1, &v1_prime);
    let diff: Vec<f64> = v1.iter().zip(&v1_prime).map(|(x, y)| x - y).collect();
    let d = norm(&diff);
    let w: Vec<f64> = v1_prime
        .iter()
        .zip(v1)
        .map(|(y, x)| y / overlap_measured - x)
        .collect();
    let wn = norm(&w);
    Ok(PerturbationReport {
        n: a.n(),
        sigma,
        overlap_measured,
        overlap_deficit: 0.5 * d * d,
        overlap_predicted: overlap_prediction(sigma, a.n()),
        w_norm_sq: wn * wn,
        concentration_stat,
        concentration_comparator,
        effective_s: effective_noise(v1, &v1_prime)?,
    })
}
