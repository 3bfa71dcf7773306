use crate::error::invalid;
use crate::Result;

/// Least-squares fit of `log value = intercept + exponent · log size`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    /// Slope in log-log coordinates.
    pub exponent: f64,
    /// Intercept in natural-log coordinates.
    pub intercept: f64,
}

/// Fits a power law to `(size, value)` points.
///
/// Needs at least two distinct sizes; sizes and values must be positive.
pub fn scaling_exponent_fit(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points
        .iter()
        .any(|&(n, v)| !(n.is_finite() && v.is_finite() && n > 0.0 && v > 0.0))
    {
        return Err(invalid(
            "points",
            "sizes and values must be positive and finite",
        ));
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| libm::log(p.0)).sum::<f64>() / k;
    let my = points.iter().map(|p| libm::log(p.1)).sum::<f64>() / k;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(n, v) in points {
        let dx = libm::log(n) - mx;
        sxx += dx * dx;
        sxy += dx * (libm::log(v) - my);
    }
    if points.len() < 2 || sxx <= 0.0 {
        return Err(invalid("points", "need at least two distinct sizes"));
    }
    let exponent = sxy / sxx;
    Ok(PowerLawFit {
        exponent,
        intercept: my - exponent * mx,
    })
}
