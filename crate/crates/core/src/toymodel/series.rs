//! The equal-count probability `φ`, the generalized Fibonacci sum and the
//! Poisson equality probability.

use crate::error::invalid;
use crate::{Error, Result};

// Terms below `e^{-45}` of the running maximum no longer change a double.
const LOG_NEGLIGIBLE: f64 = -45.0;

/// Running log-sum-exp accumulator.
struct LogSum {
    max: f64,
    scaled: f64,
}

impl LogSum {
    fn new(first: f64) -> Self {
        Self {
            max: first,
            scaled: 1.0,
        }
    }

    fn push(&mut self, t: f64) {
        if t > self.max {
            self.scaled = self.scaled * libm::exp(self.max - t) + 1.0;
            self.max = t;
        } else {
            self.scaled += libm::exp(t - self.max);
        }
    }

    fn ln(&self) -> f64 {
        self.max + libm::log(self.scaled)
    }
}

/// `P(N⁺ = N⁻)` when `n − 1` items fall independently in the `+` cell with
/// probability `s_plus`, the `−` cell with probability `s_minus`, and
/// neither otherwise:
/// `Σ_k C(n−1,k) C(n−1−k,k) (S⁺S⁻)ᵏ (1−S⁺−S⁻)^{n−1−2k}`.
///
/// Terms are generated in log space through the ratio of consecutive terms
/// and accumulated with log-sum-exp, stopping once past the peak.
pub fn phi_from_cells(s_plus: f64, s_minus: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(invalid("n", "must be at least 2"));
    }
    let valid = |p: f64| p.is_finite() && (0.0..=1.0).contains(&p);
    if !valid(s_plus) || !valid(s_minus) {
        return Err(Error::ProbabilityOutOfRange(if valid(s_plus) {
            s_minus
        } else {
            s_plus
        }));
    }
    let both = s_plus + s_minus;
    if both >= 1.0 {
        return Err(Error::ProbabilityOutOfRange(both));
    }
    let m = (n - 1) as f64;
    let log_rest = libm::log1p(-both);
    let first = m * log_rest;
    if s_plus == 0.0 || s_minus == 0.0 {
        return Ok(libm::exp(first));
    }
    let log_step = libm::log(s_plus) + libm::log(s_minus) - 2.0 * log_rest;
    let mut acc = LogSum::new(first);
    let mut t = first;
    for k in 0..(n - 1) / 2 {
        let kf = k as f64;
        t +=
            libm::log((m - 2.0 * kf) * (m - 1.0 - 2.0 * kf)) - 2.0 * libm::log(kf + 1.0) + log_step;
        acc.push(t);
        if t < acc.max + LOG_NEGLIGIBLE {
            break;
        }
    }
    Ok(libm::exp(acc.ln()).min(1.0))
}

/// `Σ_{k=0}^{⌊(n−1)/2⌋} C(n−1−k, k) αᵏ` summed term by term, and the closed
/// form `(φ₊ⁿ − φ₋ⁿ)/√(1+4α)` with `φ± = (1 ± √(1+4α))/2`.
///
/// Both are plain doubles, so the result must fit: `n ln φ₊ < 709`
/// (about `n ≤ 1000` at `α = 1`), otherwise an error is returned.
pub fn fib_sum(n: usize, alpha: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(invalid("n", "must be at least 1"));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(invalid("alpha", "must be positive and finite"));
    }
    let root = libm::sqrt(1.0 + 4.0 * alpha);
    let phi_plus = 0.5 * (1.0 + root);
    let phi_minus = 0.5 * (1.0 - root);
    if n as f64 * libm::log(phi_plus) >= 709.0 {
        return Err(invalid("n", "sum overflows a double"));
    }
    let closed = (libm::pow(phi_plus, n as f64) - libm::pow(phi_minus, n as f64)) / root;
    let m = n - 1;
    let mut direct = 0.0;
    let mut binom = 1.0;
    let mut power = 1.0;
    for k in 0..=m / 2 {
        direct += binom * power;
        // C(m−k−1, k+1) from C(m−k, k)
        let kf = k as f64;
        let mf = m as f64;
        binom = binom * (mf - 2.0 * kf) * (mf - 2.0 * kf - 1.0) / ((kf + 1.0) * (mf - kf));
        power *= alpha;
    }
    Ok((direct, closed))
}

/// `G(a, b) = P(Poi(a) = Poi(b)) = e^{−(a+b)} Σ_k aᵏbᵏ/(k!)²`.
pub fn poisson_equality_prob(a: f64, b: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0) {
        return Err(invalid("a, b", "must be nonnegative and finite"));
    }
    let first = -(a + b);
    if a == 0.0 || b == 0.0 {
        return Ok(libm::exp(first));
    }
    let log_ab = libm::log(a) + libm::log(b);
    let mut acc = LogSum::new(first);
    let mut t = first;
    let mut k = 0.0;
    loop {
        k += 1.0;
        t += log_ab - 2.0 * libm::log(k);
        acc.push(t);
        // past the peak the ratio r = ab/(k+1)² keeps shrinking, so the
        // tail is bounded by t·r/(1−r)
        let r = a * b / ((k + 1.0) * (k + 1.0));
        if r < 1.0 && t + libm::log(r / (1.0 - r)) < acc.ln() + libm::log(1e-13) {
            break;
        }
    }
    Ok(libm::exp(acc.ln()).min(1.0))
}
