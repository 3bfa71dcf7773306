//! The correlated Gaussian vectors model: `X ~ N(0, I_n)`, `Y = X + sZ`, and
//! the probability `p(n, s)` that the first coordinate has the same rank in
//! `X` and in `Y`.

mod gaussian;
mod integrals;
mod series;

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

pub use gaussian::{gaussian_cdf, gaussian_cdf_antiderivative, gaussian_pdf};
pub use integrals::{s_minus, s_plus};
pub use series::{fib_sum, phi_from_cells, poisson_equality_prob};

use crate::error::invalid;
use crate::quadrature::{integrate_2d, Integral};
use crate::stats::ProbabilityEstimate;
use crate::Result;

/// Truncated domain `[−8, 8]` for the outer `(x, z)` integrals.
pub const OUTER_RANGE: (f64, f64) = (-8.0, 8.0);

const OUTER_TOL: f64 = 1e-5;
const OUTER_MAX_PANELS: usize = 128;

/// Minimum number of replicates accepted by [`empirical_p`].
pub const MIN_REPLICATES: u64 = 100;

/// One draw of the model, keeping the generating noise `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyPair {
    /// Length of the vectors.
    pub n: usize,
    /// Noise level.
    pub s: f64,
    /// Standard Gaussian vector.
    pub x: Vec<f64>,
    /// `x + s·z`.
    pub y: Vec<f64>,
    /// Standard Gaussian noise.
    pub z: Vec<f64>,
}

impl ToyPair {
    /// Draws `(x_i, z_i)` pairs in index order.
    pub fn sample<R: Rng + ?Sized>(n: usize, s: f64, rng: &mut R) -> Result<Self> {
        check_ns(n, s)?;
        let mut x = Vec::with_capacity(n);
        let mut z = Vec::with_capacity(n);
        for _ in 0..n {
            x.push(rng.sample::<f64, _>(StandardNormal));
            z.push(rng.sample::<f64, _>(StandardNormal));
        }
        let y = x.iter().zip(&z).map(|(a, b)| a + s * b).collect();
        Ok(Self { n, s, x, y, z })
    }

    /// Whether the first coordinate has the same rank in `x` and `y`.
    pub fn rank_preserved(&self) -> bool {
        rank_of_first(&self.x) == rank_of_first(&self.y)
    }
}

fn check_ns(n: usize, s: f64) -> Result<()> {
    if n == 0 {
        return Err(invalid("n", "must be at least 1"));
    }
    if !(s.is_finite() && s >= 0.0) {
        return Err(invalid("s", "must be nonnegative and finite"));
    }
    Ok(())
}

/// `1 + #{i > 0 : v[i] > v[0]}`; ties go to the first coordinate.
///
/// # Panics
///
/// Panics on an empty slice.
pub fn rank_of_first(v: &[f64]) -> usize {
    let first = v[0];
    1 + v[1..].iter().filter(|&&t| t > first).count()
}

/// One replicate: draws the same stream as [`ToyPair::sample`] without
/// storing the vectors and reports whether the rank of the first coordinate
/// is preserved.
pub fn rank_preserved<R: Rng + ?Sized>(n: usize, s: f64, rng: &mut R) -> Result<bool> {
    check_ns(n, s)?;
    let x0: f64 = rng.sample(StandardNormal);
    let z0: f64 = rng.sample(StandardNormal);
    let y0 = x0 + s * z0;
    let (mut above_x, mut above_y) = (0usize, 0usize);
    for _ in 1..n {
        let xi: f64 = rng.sample(StandardNormal);
        let zi: f64 = rng.sample(StandardNormal);
        above_x += usize::from(xi > x0);
        above_y += usize::from(xi + s * zi > y0);
    }
    Ok(above_x == above_y)
}

/// Monte Carlo estimate of `p(n, s)` with a Wilson 95% interval.
///
/// `s = 0` returns the exact answer `1` without sampling.
pub fn empirical_p<R: Rng + ?Sized>(
    n: usize,
    s: f64,
    replicates: u64,
    rng: &mut R,
) -> Result<ProbabilityEstimate> {
    check_ns(n, s)?;
    if replicates < MIN_REPLICATES {
        return Err(invalid("replicates", "must be at least 100"));
    }
    if s == 0.0 {
        return ProbabilityEstimate::from_counts(replicates, replicates);
    }
    let mut hits = 0u64;
    for _ in 0..replicates {
        hits += u64::from(rank_preserved(n, s, rng)?);
    }
    ProbabilityEstimate::from_counts(hits, replicates)
}

/// `φ_{x,z}(n, s)`: the probability that, given `X₁ = x` and `Z₁ = z`, as
/// many other coordinates overtake the first in `X` as in `Y`.
pub fn phi(x: f64, z: f64, n: usize, s: f64) -> Result<f64> {
    if n < 2 {
        return Err(invalid("n", "must be at least 2"));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    phi_from_cells(s_plus(x, z, s)?, s_minus(x, z, s)?, n)
}

/// `p(n, s) = ∫∫ E(x) E(z) φ_{x,z}(n, s) dx dz` over `[−8, 8]²`, with the
/// quadrature error estimate.
pub fn analytic_p(n: usize, s: f64) -> Result<Integral> {
    if n < 2 {
        return Err(invalid("n", "must be at least 2"));
    }
    check_ns(n, s)?;
    if s == 0.0 {
        return Ok(Integral {
            value: 1.0,
            error: 0.0,
        });
    }
    let r = integrate_2d(
        |x, z| Ok(gaussian_pdf(x) * gaussian_pdf(z) * phi(x, z, n, s)?),
        OUTER_RANGE,
        OUTER_RANGE,
        OUTER_TOL,
        OUTER_MAX_PANELS,
    )?;
    Ok(Integral {
        value: r.value.clamp(0.0, 1.0),
        error: r.error,
    })
}

/// The limit of `p(n, c/n)` as `n → ∞`:
/// `∫∫ E(x)E(z) G(c E(x)(zF(z)+E(z)), c E(x)(−z+zF(z)+E(z))) dx dz`.
pub fn critical_limit_p(c: f64) -> Result<Integral> {
    if !(c.is_finite() && c > 0.0) {
        return Err(invalid("c", "must be positive and finite"));
    }
    let r = integrate_2d(
        |x, z| {
            let ex = gaussian_pdf(x);
            let up = gaussian_cdf_antiderivative(z);
            let a = c * ex * up;
            let b = c * ex * (up - z).max(0.0);
            Ok(ex * gaussian_pdf(z) * poisson_equality_prob(a, b)?)
        },
        OUTER_RANGE,
        OUTER_RANGE,
        1e-7,
        OUTER_MAX_PANELS,
    )?;
    Ok(Integral {
        value: r.value.clamp(0.0, 1.0),
        error: r.error,
    })
}
