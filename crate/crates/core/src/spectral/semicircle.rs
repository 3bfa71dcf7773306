use core::f64::consts::PI;

use crate::error::invalid;
use crate::Result;

/// Distribution function of the semicircle law on `[−2, 2]`:
/// `G(x) = (x√(4−x²) + 4 arcsin(x/2)) / (4π) + 1/2`.
pub fn semicircle_cdf(x: f64) -> Result<f64> {
    if !(-2.0..=2.0).contains(&x) {
        return Err(invalid("x", "must lie in [-2, 2]"));
    }
    Ok(cdf_unchecked(x))
}

fn cdf_unchecked(x: f64) -> f64 {
    let root = libm::sqrt((4.0 - x * x).max(0.0));
    ((x * root + 4.0 * libm::asin(0.5 * x)) / (4.0 * PI) + 0.5).clamp(0.0, 1.0)
}

/// Classical location `γ_j` of the `j`-th largest GOE eigenvalue:
/// the solution of `G(γ_j) = 1 − j/N`, by bisection to `1e-10`.
///
/// The upper tail is solved through `1 − G(x) = G(−x)` to keep precision
/// near the right edge.
pub fn typical_location(j: usize, n: usize) -> Result<f64> {
    if n == 0 || j == 0 || j > n {
        return Err(invalid("j", "must satisfy 1 <= j <= N"));
    }
    let tail = j as f64 / n as f64;
    if j == n {
        return Ok(-2.0);
    }
    // find y ∈ [−2, 2] with G(y) = tail, then γ_j = −y
    let (mut lo, mut hi) = (-2.0f64, 2.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if cdf_unchecked(mid) < tail {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(-0.5 * (lo + hi))
}

/// Edge expansion `2 − (3πj / (2N))^{2/3}` of [`typical_location`].
pub fn typical_location_edge(j: usize, n: usize) -> f64 {
    2.0 - libm::pow(3.0 * PI * j as f64 / (2.0 * n as f64), 2.0 / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_values() {
        assert_eq!(semicircle_cdf(0.0).unwrap(), 0.5);
        assert_eq!(semicircle_cdf(-2.0).unwrap(), 0.0);
        assert_eq!(semicircle_cdf(2.0).unwrap(), 1.0);
        assert!(semicircle_cdf(2.1).is_err());
        assert!(semicircle_cdf(f64::NAN).is_err());
    }

    #[test]
    fn cdf_matches_simpson_quadrature() {
        // composite Simpson on √(4−t²)/(2π) over [−2, 1] after t = 2 sin θ
        let f = |th: f64| 4.0 * th.cos() * th.cos() / (2.0 * PI);
        let (a, b) = (-PI / 2.0, (0.5f64).asin());
        let m = 20_000;
        let h = (b - a) / m as f64;
        let mut s = f(a) + f(b);
        for i in 1..m {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let quad = s * h / 3.0;
        assert!((quad - 0.804_499_3).abs() < 1e-6, "quad {quad}");
        assert!((semicircle_cdf(1.0).unwrap() - quad).abs() < 1e-10);
    }

    #[test]
    fn typical_locations() {
        assert!(typical_location(500, 1000).unwrap().abs() < 1e-10);
        assert_eq!(typical_location(1000, 1000).unwrap(), -2.0);
        assert!(typical_location(0, 10).is_err());
        assert!(typical_location(11, 10).is_err());
        let n = 1_000_000;
        let solved = 2.0 - typical_location(1, n).unwrap();
        let edge = 2.0 - typical_location_edge(1, n);
        assert!((solved - edge).abs() / edge < 0.01, "{solved} vs {edge}");
        let g = typical_location(123, 1000).unwrap();
        assert!((semicircle_cdf(g).unwrap() - (1.0 - 0.123)).abs() < 1e-10);
    }

    #[test]
    fn monotonicity() {
        let mut prev = -1.0;
        for i in 1..400 {
            let x = -2.0 + i as f64 * 0.01;
            let g = semicircle_cdf(x).unwrap();
            assert!(g > prev);
            prev = g;
        }
        let mut prev = f64::INFINITY;
        for j in 1..=50 {
            let g = typical_location(j, 50).unwrap();
            assert!(g < prev);
            prev = g;
        }
    }
}
