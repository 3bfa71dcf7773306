//! Interval estimates and small summary statistics.

use alloc::vec::Vec;

use crate::error::invalid;
use crate::Result;

/// Two-sided 95% standard normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// A probability estimate with its 95% confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityEstimate {
    /// Point estimate in `[0, 1]`.
    pub value: f64,
    /// Lower confidence bound.
    pub ci_low: f64,
    /// Upper confidence bound.
    pub ci_high: f64,
    /// Number of Bernoulli trials behind the estimate.
    pub replicates: u64,
}

impl ProbabilityEstimate {
    /// Estimate from `successes` out of `trials`, with a Wilson interval.
    pub fn from_counts(successes: u64, trials: u64) -> Result<Self> {
        let (ci_low, ci_high) = proportion_ci(successes, trials)?;
        Ok(Self {
            value: successes as f64 / trials as f64,
            ci_low,
            ci_high,
            replicates: trials,
        })
    }

    /// Binomial standard error `√(p(1−p)/n)` of the point estimate.
    pub fn standard_error(&self) -> f64 {
        libm::sqrt(self.value * (1.0 - self.value) / self.replicates as f64)
    }
}

/// Wilson score 95% interval for a binomial proportion.
pub fn proportion_ci(successes: u64, trials: u64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    if successes > trials {
        return Err(invalid("successes", "cannot exceed trials"));
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    let low = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Ok((low, high))
}

/// Mean of replicate-level values with a normal 95% interval on the mean,
/// clamped to `[lo, hi]`. Returns `None` for an empty slice.
pub fn mean_ci(values: &[f64], lo: f64, hi: f64) -> Option<(f64, f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() == 1 {
        return Some((mean, mean, mean));
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
    let half = Z95 * libm::sqrt(var / k);
    Some((mean, (mean - half).max(lo), (mean + half).min(hi)))
}

/// Median (mean of the two middle values for even lengths).
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v: Vec<f64> = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Wilson interval evaluated independently with the textbook formula.
    fn wilson_reference(k: f64, n: f64) -> (f64, f64) {
        let z = 1.959963984540054f64;
        let p = k / n;
        let c = (p + z * z / (2.0 * n)) / (1.0 + z * z / n);
        let h = z / (1.0 + z * z / n) * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
        (c - h, c + h)
    }

    #[test]
    fn wilson_examples() {
        let (lo, hi) = proportion_ci(0, 100).unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - 0.036_994).abs() < 1e-5, "{hi}");
        let (lo, hi) = proportion_ci(100, 100).unwrap();
        assert!((lo - 0.963_006).abs() < 1e-5 && hi == 1.0);
        let (lo, hi) = proportion_ci(50, 100).unwrap();
        assert!(((lo + hi) / 2.0 - 0.5).abs() < 1e-12);
        assert!((hi - lo - 0.1923).abs() < 1e-3, "{}", hi - lo);
        let (rl, rh) = wilson_reference(37.0, 120.0);
        let (l, h) = proportion_ci(37, 120).unwrap();
        assert!((l - rl).abs() < 1e-14 && (h - rh).abs() < 1e-14);
    }

    #[test]
    fn wilson_rejects_bad_counts() {
        assert!(proportion_ci(0, 0).is_err());
        assert!(proportion_ci(3, 2).is_err());
    }

    #[test]
    fn mean_and_median() {
        assert_eq!(mean_ci(&[1.0, 1.0, 1.0], 0.0, 1.0), Some((1.0, 1.0, 1.0)));
        let (m, lo, hi) = mean_ci(&[0.2, 0.4, 0.6], 0.0, 1.0).unwrap();
        assert!((m - 0.4).abs() < 1e-15 && lo < m && m < hi);
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }
}
