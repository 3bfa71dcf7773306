//! Symmetric eigendecomposition and the eigenvalue statistics of the GOE
//! edge: top gap, inverse-gap sums, semicircle reference quantities and
//! power-law exponent fits.

mod scaling;
mod semicircle;
mod tridiagonal;

use alloc::vec::Vec;

pub use scaling::{scaling_exponent_fit, PowerLawFit};
pub use semicircle::{semicircle_cdf, typical_location, typical_location_edge};

use crate::error::invalid;
use crate::matrix::dot;
use crate::{Error, Permutation, Result, SymmetricMatrix};
use tridiagonal::{ql_implicit, Tridiagonal};

/// Gaps at or below this are treated as a repeated top eigenvalue.
pub const DEGENERATE_GAP: f64 = 1e-14;

/// Eigenvalues in non-increasing order with matching unit eigenvectors.
///
/// Each eigenvector's sign is canonical: its largest-magnitude coordinate
/// (first one on ties) is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    n: usize,
    eigenvalues: Vec<f64>,
    /// Row `i` is eigenvector `i`.
    vectors: Vec<f64>,
}

impl SpectralDecomposition {
    /// Dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `λ₁ ≥ λ₂ ≥ … ≥ λ_N`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unit eigenvector `v_{i+1}` (0-based `i`).
    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.n..(i + 1) * self.n]
    }

    /// Iterator over `(λ_i, v_i)` in descending order.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, &[f64])> {
        self.eigenvalues
            .iter()
            .copied()
            .zip(self.vectors.chunks_exact(self.n))
    }

    /// Projections `Vᵀ x`: the coordinates of `x` in the eigenbasis.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self
            .vectors
            .chunks_exact(self.n)
            .map(|v| dot(v, x))
            .collect())
    }

    /// `Σ_i c_i v_i` for coordinates `c` in the eigenbasis.
    pub fn embed(&self, coords: &[f64]) -> Result<Vec<f64>> {
        if coords.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: coords.len(),
            });
        }
        let mut out = alloc::vec![0.0; self.n];
        for (c, v) in coords.iter().zip(self.vectors.chunks_exact(self.n)) {
            if *c != 0.0 {
                crate::matrix::axpy(*c, v, &mut out);
            }
        }
        Ok(out)
    }

    /// `V diag(λ) Vᵀ`.
    pub fn reconstruct(&self) -> SymmetricMatrix {
        let n = self.n;
        let mut out = alloc::vec![0.0; n * n];
        for (lambda, v) in self.pairs() {
            for i in 0..n {
                let s = lambda * v[i];
                crate::matrix::axpy(s, v, &mut out[i * n..(i + 1) * n]);
            }
        }
        SymmetricMatrix::from_upper_fn(n, |i, j| out[i * n + j])
    }

    /// `λ₁ − λ₂`.
    pub fn top_gap(&self) -> f64 {
        top_gap(&self.eigenvalues)
    }

    /// `Σ_{i≥2} (λ₁ − λ_i)^{−p}`.
    pub fn inverse_gap_sum(&self, p: u32) -> Result<f64> {
        inverse_gap_sum(&self.eigenvalues, p)
    }
}

/// Full eigendecomposition of a symmetric matrix.
pub fn decompose(m: &SymmetricMatrix) -> Result<SpectralDecomposition> {
    let n = m.n();
    let tri = Tridiagonal::reduce(n, m.as_slice().to_vec());
    let mut vectors = tri.q_transposed();
    let (mut diag, mut off) = (tri.diag, tri.off);
    ql_implicit(&mut diag, &mut off, Some(&mut vectors))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| diag[b].total_cmp(&diag[a]).then(a.cmp(&b)));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let mut sorted = Vec::with_capacity(n * n);
    for &i in &order {
        let start = sorted.len();
        sorted.extend_from_slice(&vectors[i * n..(i + 1) * n]);
        let v = &mut sorted[start..];
        normalize(v);
        canonicalize_sign(v);
    }
    Ok(SpectralDecomposition {
        n,
        eigenvalues,
        vectors: sorted,
    })
}

/// Eigenvalues only, non-increasing.
pub fn eigenvalues(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    let tri = Tridiagonal::reduce(m.n(), m.as_slice().to_vec());
    let (mut diag, mut off) = (tri.diag, tri.off);
    ql_implicit(&mut diag, &mut off, None)?;
    diag.sort_by(|a, b| b.total_cmp(a));
    Ok(diag)
}

/// Eigenvalues (non-increasing) and the projections `⟨vᵢ, x⟩` of `x` on the
/// matching unit eigenvectors, without forming the eigenvectors.
///
/// Each projection carries the sign of an unspecified orientation of `vᵢ`;
/// squares and sums of squares are well defined.
pub fn eigen_projections(m: &SymmetricMatrix, x: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = m.n();
    if x.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let tri = Tridiagonal::reduce(n, m.as_slice().to_vec());
    let mut z = x.to_vec();
    tri.apply_qt(&mut z);
    let (mut diag, mut off) = (tri.diag, tri.off);
    ql_implicit(&mut diag, &mut off, Some(&mut z))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| diag[b].total_cmp(&diag[a]).then(a.cmp(&b)));
    Ok((
        order.iter().map(|&i| diag[i]).collect(),
        order.iter().map(|&i| z[i]).collect(),
    ))
}

/// The leading eigenpair `(λ₁, v₁)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingPair {
    /// Largest eigenvalue.
    pub value: f64,
    /// Unit eigenvector, sign-canonical as in [`SpectralDecomposition`].
    pub vector: Vec<f64>,
    /// `λ₁ − λ₂` (infinite when `n = 1`).
    pub gap: f64,
}

/// Leading eigenpair without the full decomposition.
///
/// Tridiagonalizes once, locates `λ₁` and `λ₂` by Sturm bisection, solves
/// for the tridiagonal eigenvector by inverse iteration and maps it back.
/// Agrees with the first pair of [`decompose`] (including sign).
pub fn leading_pair(m: &SymmetricMatrix) -> Result<LeadingPair> {
    let n = m.n();
    let tri = Tridiagonal::reduce(n, m.as_slice().to_vec());
    let value = tri.kth_largest(0);
    let gap = if n > 1 {
        value - tri.kth_largest(1)
    } else {
        f64::INFINITY
    };
    if gap <= DEGENERATE_GAP {
        return Err(Error::DegenerateGap { gap });
    }
    let mut vector = tri.inverse_iteration(value);
    tri.back_transform(&mut vector);
    normalize(&mut vector);
    canonicalize_sign(&mut vector);
    Ok(LeadingPair { value, vector, gap })
}

fn normalize(v: &mut [f64]) {
    let nrm = libm::sqrt(dot(v, v));
    if nrm > 0.0 {
        v.iter_mut().for_each(|x| *x /= nrm);
    }
}

fn canonicalize_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if libm::fabs(*x) > libm::fabs(v[best]) {
            best = i;
        }
    }
    if v.get(best).is_some_and(|x| *x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Chooses the sign of `v1_prime` so that `Σ_k v1[π(k)] · v1_prime[k] > 0`.
///
/// `v1_prime` lives in the relabeled coordinates of `B`, whose `k`-th
/// coordinate corresponds to coordinate `π(k)` of `A`.
pub fn fix_sign(v1: &[f64], v1_prime: &[f64], pi: &Permutation) -> Result<Vec<f64>> {
    let n = v1.len();
    if v1_prime.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: v1_prime.len(),
        });
    }
    if pi.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: pi.len(),
        });
    }
    let inner: f64 = v1_prime
        .iter()
        .enumerate()
        .map(|(k, y)| v1[pi.apply(k)] * y)
        .sum();
    if inner == 0.0 {
        return Err(Error::DegenerateSign);
    }
    let s = if inner > 0.0 { 1.0 } else { -1.0 };
    Ok(v1_prime.iter().map(|y| s * y).collect())
}

/// `λ₁ − λ₂` for a non-increasing spectrum (0 for a single eigenvalue).
pub fn top_gap(eigenvalues: &[f64]) -> f64 {
    match eigenvalues {
        [l1, l2, ..] => l1 - l2,
        _ => 0.0,
    }
}

/// `Σ_{i≥2} (λ₁ − λ_i)^{−p}` for a non-increasing spectrum.
pub fn inverse_gap_sum(eigenvalues: &[f64], p: u32) -> Result<f64> {
    if p == 0 {
        return Err(invalid("p", "must be positive"));
    }
    let gap = top_gap(eigenvalues);
    if eigenvalues.len() >= 2 && gap <= DEGENERATE_GAP {
        return Err(Error::DegenerateGap { gap });
    }
    let l1 = eigenvalues.first().copied().unwrap_or(0.0);
    Ok(eigenvalues
        .iter()
        .skip(1)
        .map(|l| libm::pow(l1 - l, -(p as f64)))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randmat::sample_goe;
    use crate::rng::stream_from_seed;
    use alloc::vec;

    fn check_decomposition(m: &SymmetricMatrix, d: &SpectralDecomposition, tol: f64) {
        let n = m.n();
        for w in d.eigenvalues().windows(2) {
            assert!(w[0] >= w[1]);
        }
        for (lambda, v) in d.pairs() {
            let mv = m.mul_vec(v).unwrap();
            let res: f64 = mv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res <= tol * (1.0 + lambda.abs()), "residual {res}");
        }
        for i in 0..n {
            for j in 0..=i {
                let ip = dot(d.vector(i), d.vector(j));
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - want).abs() <= tol, "orthonormality ({i},{j}) {ip}");
            }
        }
    }

    #[test]
    fn projections_without_vectors() {
        let m = sample_goe(50, &mut stream_from_seed(11)).unwrap();
        let x: Vec<f64> = (0..50).map(|i| libm::sin(i as f64)).collect();
        let d = decompose(&m).unwrap();
        let (values, proj) = eigen_projections(&m, &x).unwrap();
        let full = d.project(&x).unwrap();
        for i in 0..50 {
            assert!((values[i] - d.eigenvalues()[i]).abs() < 1e-12);
            assert!((proj[i].abs() - full[i].abs()).abs() < 1e-10, "{i}");
        }
        assert!(eigen_projections(&m, &x[..3]).is_err());
    }

    #[test]
    fn identity_and_diagonal() {
        let d = decompose(&SymmetricMatrix::identity(3)).unwrap();
        assert_eq!(d.eigenvalues(), &[1.0, 1.0, 1.0]);
        let m = SymmetricMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        let d = decompose(&m).unwrap();
        assert_eq!(d.eigenvalues(), &[3.0, 2.0, 1.0]);
        assert_eq!(d.vector(0), &[1.0, 0.0, 0.0]);
        assert_eq!(d.vector(1), &[0.0, 0.0, 1.0]);
        assert_eq!(d.vector(2), &[0.0, 1.0, 0.0]);
        let lp = leading_pair(&m).unwrap();
        assert!((lp.value - 3.0).abs() < 1e-14);
        assert!((lp.vector[0] - 1.0).abs() < 1e-12 && lp.vector[1].abs() < 1e-12);
    }

    #[test]
    fn tiny_sizes() {
        let one = SymmetricMatrix::from_diagonal(&[-4.0]);
        let d = decompose(&one).unwrap();
        assert_eq!(d.eigenvalues(), &[-4.0]);
        assert_eq!(d.vector(0), &[1.0]);
        let lp = leading_pair(&one).unwrap();
        assert_eq!(lp.vector, vec![1.0]);
        let two = SymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let d = decompose(&two).unwrap();
        check_decomposition(&two, &d, 1e-14);
        assert!((d.eigenvalues()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn goe_residuals_and_reconstruction() {
        let mut rng = stream_from_seed(5);
        for n in [3, 17, 64] {
            let m = sample_goe(n, &mut rng).unwrap();
            let d = decompose(&m).unwrap();
            check_decomposition(&m, &d, 1e-10);
            assert!(d.reconstruct().max_abs_diff(&m) < 1e-12);
            let lp = leading_pair(&m).unwrap();
            assert!((lp.value - d.eigenvalues()[0]).abs() < 1e-13);
            let diff: f64 = lp
                .vector
                .iter()
                .zip(d.vector(0))
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(diff < 1e-10, "leading pair mismatch {diff}");
            let vals = eigenvalues(&m).unwrap();
            for (a, b) in vals.iter().zip(d.eigenvalues()) {
                assert!((a - b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn degenerate_top_is_rejected() {
        assert!(matches!(
            leading_pair(&SymmetricMatrix::identity(3)),
            Err(Error::DegenerateGap { .. })
        ));
        assert!(matches!(
            inverse_gap_sum(&[1.0, 1.0, 0.0], 2),
            Err(Error::DegenerateGap { .. })
        ));
    }

    #[test]
    fn gap_sums_by_hand() {
        let ev = [2.0, 1.0, 0.0];
        assert_eq!(inverse_gap_sum(&ev, 1).unwrap(), 1.5);
        assert_eq!(inverse_gap_sum(&ev, 2).unwrap(), 1.25);
        assert_eq!(top_gap(&ev), 1.0);
        assert!(inverse_gap_sum(&ev, 0).is_err());
    }

    #[test]
    fn fix_sign_cases() {
        let v = [0.6, 0.8];
        let id = Permutation::identity(2);
        assert_eq!(fix_sign(&v, &v, &id).unwrap(), vec![0.6, 0.8]);
        assert_eq!(fix_sign(&v, &[-0.6, -0.8], &id).unwrap(), vec![0.6, 0.8]);
        // rotation by 30° keeps the sign
        let t = core::f64::consts::PI / 6.0;
        let rot = [0.6 * t.cos() - 0.8 * t.sin(), 0.6 * t.sin() + 0.8 * t.cos()];
        assert_eq!(fix_sign(&v, &rot, &id).unwrap(), rot.to_vec());
        // relabeled copy: v'[k] = v[π(k)]
        let swap = Permutation::from_vec(vec![1, 0]).unwrap();
        assert_eq!(fix_sign(&v, &[-0.8, -0.6], &swap).unwrap(), vec![0.8, 0.6]);
        assert_eq!(
            fix_sign(&[1.0, 0.0], &[0.0, 1.0], &id),
            Err(Error::DegenerateSign)
        );
    }
}
