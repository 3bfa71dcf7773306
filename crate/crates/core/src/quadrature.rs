//! One- and two-dimensional numerical integration.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// An integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    /// Approximate value.
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, libm::fabs((kronrod - gauss) * h))
}

/// Globally adaptive Gauss–Kronrod (7/15) integration of `f` over `[a, b]`.
///
/// Bisects the interval with the largest error until the summed error is
/// below `abs_tol`; fails with the achieved estimate after `max_intervals`.
pub fn integrate(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut parts: Vec<(f64, f64, f64, f64)> = vec![(a, b, v, e)];
    loop {
        let (value, error) = parts
            .iter()
            .fold((0.0, 0.0), |(s, t), p| (s + p.2, t + p.3));
        if error <= abs_tol {
            return Ok(Integral { value, error });
        }
        if parts.len() >= max_intervals {
            return Err(Error::Quadrature {
                value,
                estimate: error,
            });
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if libm::fabs(dx) < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

/// Tensor-product Gauss–Legendre rule with `panels × panels` square panels.
pub fn tensor_gauss_legendre<F>(
    f: &mut F,
    x_range: (f64, f64),
    z_range: (f64, f64),
    order: usize,
    panels: usize,
) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let (nodes, weights) = gauss_legendre(order);
    let axis = |(lo, hi): (f64, f64)| {
        let h = (hi - lo) / panels as f64;
        let mut pts = Vec::with_capacity(panels * order);
        for p in 0..panels {
            let c = lo + (p as f64 + 0.5) * h;
            for (t, w) in nodes.iter().zip(&weights) {
                pts.push((c + 0.5 * h * t, 0.5 * h * w));
            }
        }
        pts
    };
    let xs = axis(x_range);
    let zs = axis(z_range);
    let mut total = 0.0;
    for &(x, wx) in &xs {
        let mut row = 0.0;
        for &(z, wz) in &zs {
            row += wz * f(x, z)?;
        }
        total += wx * row;
    }
    Ok(total)
}

/// Refines [`tensor_gauss_legendre`] by doubling the panel count until two
/// successive levels agree to `tol`. The error estimate is that difference.
pub fn integrate_2d<F>(
    mut f: F,
    x_range: (f64, f64),
    z_range: (f64, f64),
    tol: f64,
    max_panels: usize,
) -> Result<Integral>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    const ORDER: usize = 10;
    let mut panels = 4;
    let mut prev = tensor_gauss_legendre(&mut f, x_range, z_range, ORDER, panels)?;
    loop {
        panels *= 2;
        let cur = tensor_gauss_legendre(&mut f, x_range, z_range, ORDER, panels)?;
        let error = libm::fabs(cur - prev);
        if error <= tol {
            return Ok(Integral { value: cur, error });
        }
        if panels >= max_panels {
            return Err(Error::Quadrature {
                value: cur,
                estimate: error,
            });
        }
        prev = cur;
    }
}
