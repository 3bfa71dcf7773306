//! Householder tridiagonalization and the implicit QL iteration.
//!
//! The working matrix is row-major and kept fully symmetric, so every inner
//! loop runs over contiguous memory. Eigenvectors are accumulated as rows
//! (the transpose of the usual column layout) for the same reason.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{axpy, dot};
use crate::{Error, Result};

/// Orthogonal reduction `A = Q T Qᵀ` with `T` tridiagonal.
pub(crate) struct Tridiagonal {
    pub n: usize,
    /// Diagonal of `T`.
    pub diag: Vec<f64>,
    /// `off[k] = T[k][k+1]`; `off[n−1] = 0`.
    pub off: Vec<f64>,
    /// Row `k` holds the Householder vector of step `k` in columns `k+1..n`
    /// (unit leading entry at `k+1`).
    reflectors: Vec<f64>,
    betas: Vec<f64>,
}

impl Tridiagonal {
    /// Reduces the row-major symmetric matrix `a` (consumed as workspace).
    pub fn reduce(n: usize, mut a: Vec<f64>) -> Self {
        debug_assert_eq!(a.len(), n * n);
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n];
        let mut betas = vec![0.0; n.saturating_sub(2)];
        let mut p = vec![0.0; n];
        let mut v = vec![0.0; n];

        for k in 0..n.saturating_sub(2) {
            let m = n - k - 1;
            let x0 = a[k * n + k + 1];
            let tail = &a[k * n + k + 2..(k + 1) * n];
            let sigma = dot(tail, tail);
            diag[k] = a[k * n + k];
            if sigma == 0.0 {
                off[k] = x0;
                betas[k] = 0.0;
                a[k * n + k + 1] = 1.0;
                continue;
            }
            let mu = libm::sqrt(x0 * x0 + sigma);
            let v0 = if x0 <= 0.0 {
                x0 - mu
            } else {
                -sigma / (x0 + mu)
            };
            let beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
            off[k] = mu;
            betas[k] = beta;

            let v = &mut v[..m];
            v[0] = 1.0;
            for (vi, &xi) in v[1..].iter_mut().zip(&a[k * n + k + 2..(k + 1) * n]) {
                *vi = xi / v0;
            }
            a[k * n + k + 1..(k + 1) * n].copy_from_slice(v);

            // p = β A₂₂ v, w = p − (β/2)(pᵀv) v
            let p = &mut p[..m];
            for (i, pi) in p.iter_mut().enumerate() {
                let r = (k + 1 + i) * n + k + 1;
                *pi = beta * dot(&a[r..r + m], v);
            }
            let kappa = 0.5 * beta * dot(p, v);
            axpy(-kappa, v, p);

            // A₂₂ ← A₂₂ − v wᵀ − w vᵀ
            for i in 0..m {
                let r = (k + 1 + i) * n + k + 1;
                let (vi, wi) = (v[i], p[i]);
                for ((aij, &wj), &vj) in a[r..r + m].iter_mut().zip(p.iter()).zip(v.iter()) {
                    *aij -= vi * wj + wi * vj;
                }
            }
        }
        if n >= 2 {
            diag[n - 2] = a[(n - 2) * n + n - 2];
            off[n - 2] = a[(n - 2) * n + n - 1];
        }
        if n >= 1 {
            diag[n - 1] = a[n * n - 1];
            off[n - 1] = 0.0;
        }
        Self {
            n,
            diag,
            off,
            reflectors: a,
            betas,
        }
    }

    fn reflector(&self, k: usize) -> &[f64] {
        let n = self.n;
        &self.reflectors[k * n + k + 1..(k + 1) * n]
    }

    /// `Qᵀ`, row-major (row `r` is column `r` of `Q`).
    pub fn q_transposed(&self) -> Vec<f64> {
        let n = self.n;
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        let mut w = vec![0.0; n];
        // Backward accumulation Q = H₀(H₁(⋯ I)).
        for k in (0..self.betas.len()).rev() {
            let beta = self.betas[k];
            if beta == 0.0 {
                continue;
            }
            let v = self.reflector(k);
            let m = v.len();
            let c0 = k + 1;
            let w = &mut w[..m];
            w.iter_mut().for_each(|x| *x = 0.0);
            for (i, &vi) in v.iter().enumerate() {
                let r = (c0 + i) * n + c0;
                axpy(vi, &q[r..r + m], w);
            }
            for (i, &vi) in v.iter().enumerate() {
                let r = (c0 + i) * n + c0;
                axpy(-beta * vi, w, &mut q[r..r + m]);
            }
        }
        transpose_in_place(n, &mut q);
        q
    }

    /// Maps an eigenvector of `T` to one of the original matrix: `y ← Q y`.
    pub fn back_transform(&self, y: &mut [f64]) {
        for k in (0..self.betas.len()).rev() {
            let beta = self.betas[k];
            if beta == 0.0 {
                continue;
            }
            let v = self.reflector(k);
            let seg = &mut y[k + 1..];
            let s = beta * dot(v, seg);
            axpy(-s, v, seg);
        }
    }

    /// Number of eigenvalues of `T` strictly less than `x` (Sturm count).
    /// `Qᵀ x`, the coordinates of `x` in the tridiagonal basis.
    pub fn apply_qt(&self, x: &mut [f64]) {
        for k in 0..self.betas.len() {
            let beta = self.betas[k];
            if beta == 0.0 {
                continue;
            }
            let v = self.reflector(k);
            let seg = &mut x[k + 1..];
            let s = beta * dot(v, seg);
            axpy(-s, v, seg);
        }
    }

    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.n {
            let e2 = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1]
            };
            q = self.diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (libm::fabs(x) + f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval enclosing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.n {
            let r = libm::fabs(self.off[i])
                + if i > 0 {
                    libm::fabs(self.off[i - 1])
                } else {
                    0.0
                };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `j`-th largest eigenvalue (0-based) by bisection on Sturm counts.
    pub fn kth_largest(&self, j: usize) -> f64 {
        let n = self.n;
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * (libm::fabs(lo) + libm::fabs(hi)) + f64::MIN_POSITIVE;
        lo -= pad;
        hi += pad;
        // λ_(j) = sup { x : #below(x) ≤ n − 1 − j }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) <= n - 1 - j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector of `T` for the eigenvalue `lambda` by inverse iteration.
    pub fn inverse_iteration(&self, lambda: f64) -> Vec<f64> {
        let n = self.n;
        let scale = self
            .diag
            .iter()
            .zip(&self.off)
            .fold(0.0, |acc: f64, (d, e)| {
                acc.max(libm::fabs(*d) + libm::fabs(*e))
            })
            .max(f64::MIN_POSITIVE);
        let lu = ShiftedLu::factor(&self.diag, &self.off, lambda, scale);
        let mut x = vec![1.0; n];
        // a fixed, non-symmetric start avoids accidental orthogonality
        for (i, xi) in x.iter_mut().enumerate() {
            *xi += 1e-3 * (i % 7) as f64;
        }
        for _ in 0..3 {
            lu.solve(&mut x);
            let nrm = libm::sqrt(dot(&x, &x));
            x.iter_mut().for_each(|v| *v /= nrm);
        }
        x
    }
}

fn transpose_in_place(n: usize, a: &mut [f64]) {
    for i in 0..n {
        for j in (i + 1)..n {
            a.swap(i * n + j, j * n + i);
        }
    }
}

/// LU factorization with partial pivoting of `T − λI`.
struct ShiftedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(diag: &[f64], off: &[f64], lambda: f64, scale: f64) -> Self {
        let n = diag.len();
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swapped = vec![false; n];
        let mut cur_d = diag[0] - lambda;
        let mut cur_s = if n > 1 { off[0] } else { 0.0 };
        for i in 0..n.saturating_sub(1) {
            let sub = off[i];
            let next_d = diag[i + 1] - lambda;
            let next_s = if i + 2 < n { off[i + 1] } else { 0.0 };
            if libm::fabs(cur_d) >= libm::fabs(sub) {
                let l = if cur_d == 0.0 { 0.0 } else { sub / cur_d };
                u0[i] = cur_d;
                u1[i] = cur_s;
                u2[i] = 0.0;
                mult[i] = l;
                cur_d = next_d - l * cur_s;
                cur_s = next_s;
            } else {
                let l = cur_d / sub;
                u0[i] = sub;
                u1[i] = next_d;
                u2[i] = next_s;
                mult[i] = l;
                swapped[i] = true;
                cur_d = cur_s - l * next_d;
                cur_s = -l * next_s;
            }
        }
        u0[n - 1] = cur_d;
        let tiny = f64::EPSILON * scale;
        for u in u0.iter_mut() {
            if libm::fabs(*u) < tiny {
                *u = if *u < 0.0 { -tiny } else { tiny };
            }
        }
        Self {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.mult[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut r = b[i];
            if i + 1 < n {
                r -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                r -= self.u2[i] * b[i + 2];
            }
            b[i] = r / self.u0[i];
        }
    }
}

/// Implicit QL with Wilkinson-style shifts on `(diag, off)`.
///
/// On return `diag` holds the eigenvalues (unsorted). When `vectors` is
/// given (row-major, rows are vectors), the plane rotations are applied to
/// pairs of rows, so passing `Qᵀ` yields the eigenvectors of the original
/// matrix as rows. Rows may have any common width: passing `Qᵀx` (width 1)
/// yields the projections `⟨vᵢ, x⟩`.
pub(crate) fn ql_implicit(
    diag: &mut [f64],
    off: &mut [f64],
    mut vectors: Option<&mut [f64]>,
) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(libm::fabs(diag[l]) + libm::fabs(off[l]));
        let mut m = l;
        while m < n - 1 && libm::fabs(off[m]) > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 64 {
                    return Err(Error::NoConvergence(l));
                }
                let g = diag[l];
                let mut p = (diag[l + 1] - g) / (2.0 * off[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                diag[l] = off[l] / (p + r);
                diag[l + 1] = off[l] * (p + r);
                let dl1 = diag[l + 1];
                let mut h = g - diag[l];
                for d in diag[l + 2..].iter_mut() {
                    *d -= h;
                }
                f += h;

                p = diag[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = off[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * off[i];
                    h = c * p;
                    r = libm::hypot(p, off[i]);
                    off[i + 1] = s * r;
                    s = off[i] / r;
                    c = p / r;
                    p = c * diag[i] - s * g;
                    diag[i + 1] = h + s * (c * g + s * diag[i]);
                    if let Some(z) = vectors.as_deref_mut() {
                        let w = z.len() / n;
                        let (lo, hi) = z.split_at_mut((i + 1) * w);
                        let zi = &mut lo[i * w..];
                        let zi1 = &mut hi[..w];
                        for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                            let t = *b;
                            *b = s * *a + c * t;
                            *a = c * *a - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * off[l] / dl1;
                off[l] = s * p;
                diag[l] = c * p;
                if libm::fabs(off[l]) <= eps * tst1 {
                    break;
                }
            }
        }
        diag[l] += f;
        off[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiagonal_dense(d: &[f64], e: &[f64]) -> Vec<f64> {
        let n = d.len();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = d[i];
            if i + 1 < n {
                a[i * n + i + 1] = e[i];
                a[(i + 1) * n + i] = e[i];
            }
        }
        a
    }

    #[test]
    fn sturm_counts_known_spectrum() {
        // path graph P4 Laplacian-like: eigenvalues 2 − 2cos(kπ/5)
        let d = [2.0; 4];
        let e = [-1.0, -1.0, -1.0];
        let t = Tridiagonal::reduce(4, tridiagonal_dense(&d, &e));
        let exact: Vec<f64> = (1..=4)
            .map(|k| 2.0 - 2.0 * libm::cos(k as f64 * core::f64::consts::PI / 5.0))
            .collect();
        assert_eq!(t.count_below(0.0), 0);
        assert_eq!(t.count_below(5.0), 4);
        assert_eq!(t.count_below(exact[1] + 1e-9), 2);
        assert!((t.kth_largest(0) - exact[3]).abs() < 1e-13);
        assert!((t.kth_largest(3) - exact[0]).abs() < 1e-13);
    }

    #[test]
    fn ql_on_two_by_two() {
        let mut d = vec![1.0, 1.0];
        let mut e = vec![1.0, 0.0];
        ql_implicit(&mut d, &mut e, None).unwrap();
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((d[0] - 0.0).abs() < 1e-15 && (d[1] - 2.0).abs() < 1e-15);
    }
}
