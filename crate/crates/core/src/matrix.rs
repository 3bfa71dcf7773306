use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Permutation, Result};

/// Absolute tolerance accepted when validating symmetry of caller input.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Dense symmetric matrix stored row-major.
///
/// Both triangles are stored and kept exactly equal: every constructor either
/// builds the matrix symmetric by construction or symmetrizes validated input.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

/// A sample of the Gaussian Orthogonal Ensemble. See [`crate::randmat::sample_goe`].
pub type GoeMatrix = SymmetricMatrix;

impl SymmetricMatrix {
    /// The `n × n` zero matrix.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Builds a matrix from row-major data.
    ///
    /// Entries must be finite and `|m[i][j] − m[j][i]| ≤ 1e-12`; the stored
    /// matrix is the exact symmetrization `(M + Mᵀ) / 2`.
    pub fn from_row_major(n: usize, mut data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if data.len() != n * n {
            return Err(Error::SizeMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if let Some(idx) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(idx));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (data[i * n + j], data[j * n + i]);
                if libm::fabs(a - b) > SYMMETRY_TOLERANCE {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
                let mean = 0.5 * (a + b);
                data[i * n + j] = mean;
                data[j * n + i] = mean;
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from rows, as in `from_row_major`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data)
    }

    /// Builds a matrix from its upper triangle `f(i, j)` for `i ≤ j`.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                m.data[i * n + j] = x;
                m.data[j * n + i] = x;
            }
        }
        m
    }

    /// Dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Row `i`, which is also column `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Consumes the matrix, returning its row-major entries.
    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// `self + scale · other`.
    pub fn add_scaled(&self, other: &Self, scale: f64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + scale * b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n).map(|i| dot(self.row(i), x)).collect())
    }

    /// Relabels rows and columns: `result[k][l] = self[pi(k)][pi(l)]`.
    pub fn conjugate(&self, pi: &Permutation) -> Result<Self> {
        let n = self.n;
        if pi.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: pi.len(),
            });
        }
        let map = pi.as_slice();
        let mut data = Vec::with_capacity(n * n);
        for &pk in map {
            let src = self.row(pk);
            data.extend(map.iter().map(|&pl| src[pl]));
        }
        Ok(Self { n, data })
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc, (a, b)| f64::max(acc, libm::fabs(a - b)))
    }
}

/// Dot product with four independent accumulators.
///
/// The summation order is fixed, so results are reproducible.
#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let i = 4 * c;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut tail = 0.0;
    for i in 4 * chunks..a.len() {
        tail += a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// `y += alpha · x`.
#[inline]
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    libm::sqrt(dot(x, x))
}
