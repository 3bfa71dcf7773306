//! The cell probabilities `S⁺(x, x+sz) = P(X₁ > x, Y₁ < x+sz)` and
//! `S⁻(x, x+sz) = P(X₁ < x, Y₁ > x+sz)` of the toy model.

use super::gaussian::{gaussian_cdf, gaussian_pdf};
use crate::error::invalid;
use crate::quadrature::integrate;
use crate::Result;

/// Beyond this many standard deviations the normal density and tail are
/// below `1.1e-18`.
pub(crate) const TAIL_CUTOFF: f64 = 9.0;

const ABS_TOL: f64 = 1e-13;

/// `S⁺(x, x+sz) = s ∫₀^∞ E(x+vs) F(z−v) dv`.
///
/// The range is cut where either factor drops below the Gaussian tail
/// cutoff, then integrated adaptively to `1e-13` absolute.
pub fn s_plus(x: f64, z: f64, s: f64) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(invalid("s", "must be positive and finite"));
    }
    if !x.is_finite() || !z.is_finite() {
        return Err(invalid("x, z", "must be finite"));
    }
    let v_max = f64::min((TAIL_CUTOFF - x) / s, z + TAIL_CUTOFF);
    if v_max <= 0.0 {
        return Ok(0.0);
    }
    let r = integrate(
        |v| gaussian_pdf(x + v * s) * gaussian_cdf(z - v),
        0.0,
        v_max,
        ABS_TOL / s,
        400,
    )?;
    Ok((s * r.value).clamp(0.0, 1.0))
}

/// `S⁻(x, x+sz) = S⁺(−x, −x−sz)`.
pub fn s_minus(x: f64, z: f64, s: f64) -> Result<f64> {
    s_plus(-x, -z, s)
}
