use core::f64::consts::{FRAC_1_SQRT_2, PI};

/// Standard normal density `E(u) = e^{−u²/2} / √(2π)`.
#[inline]
pub fn gaussian_pdf(u: f64) -> f64 {
    libm::exp(-0.5 * u * u) / libm::sqrt(2.0 * PI)
}

/// Standard normal distribution function `F(u)`.
#[inline]
pub fn gaussian_cdf(u: f64) -> f64 {
    0.5 * libm::erfc(-u * FRAC_1_SQRT_2)
}

/// `∫_{−∞}^{z} F(u) du = z F(z) + E(z)`.
pub fn gaussian_cdf_antiderivative(z: f64) -> f64 {
    if z < -37.0 {
        return 0.0;
    }
    z * gaussian_cdf(z) + gaussian_pdf(z)
}
