//! Rank alignment of vectors, the overlap metric, the QAP objective and the
//! EIG1 spectral alignment algorithm.
//!
//! Ranks always use the descending order, with exact ties broken by
//! ascending index.

use alloc::vec::Vec;

use crate::spectral::leading_pair;
use crate::{Error, Permutation, Result, SymmetricMatrix};

/// Indices of `x` sorted by decreasing value (ties by ascending index).
pub fn descending_order(x: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[b].total_cmp(&x[a]).then(a.cmp(&b)));
    idx
}

/// The permutation `ρ` with `rank_x(x[ρ(i)]) = rank_y(y[i])` for every `i`:
/// the `k`-th largest coordinate of `y` is mapped to the index of the
/// `k`-th largest coordinate of `x`.
pub fn aligning_permutation(x: &[f64], y: &[f64]) -> Result<Permutation> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let ox = descending_order(x);
    let oy = descending_order(y);
    let mut rho = alloc::vec![0; x.len()];
    for (&iy, &ix) in oy.iter().zip(&ox) {
        rho[iy] = ix;
    }
    Permutation::from_vec(rho)
}

/// Fraction of indices on which `rho` and `pi` agree.
pub fn overlap(rho: &Permutation, pi: &Permutation) -> Result<f64> {
    let n = rho.len();
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    Ok(rho.agreements(pi)? as f64 / n as f64)
}

/// `⟨A, P B Pᵀ⟩ = Σ_{k,l} A[p(k)][p(l)] · B[k][l]`.
///
/// `p` maps indices of `B` to indices of `A`, the same direction as the
/// planted relabeling and as [`aligning_permutation`]`(v_A, v_B)`, so for a
/// noiseless planted instance the score is maximal at `p = π`.
pub fn qap_score(a: &SymmetricMatrix, b: &SymmetricMatrix, p: &Permutation) -> Result<f64> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: b.n(),
        });
    }
    if p.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: p.len(),
        });
    }
    let map = p.as_slice();
    let mut total = 0.0;
    for (k, &pk) in map.iter().enumerate() {
        let arow = a.row(pk);
        let brow = b.row(k);
        let mut acc = 0.0;
        for (&pl, &bkl) in map.iter().zip(brow) {
            acc += arow[pl] * bkl;
        }
        total += acc;
    }
    Ok(total)
}

/// Output of [`eig1`].
#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentResult {
    /// The returned estimate `Π̂`.
    pub pi_hat: Permutation,
    /// `true` when `Π₊` (alignment with `+v′₁`) was returned.
    pub chose_plus: bool,
    /// `⟨A, Π₊ B Π₊ᵀ⟩`.
    pub score_plus: f64,
    /// `⟨A, Π₋ B Π₋ᵀ⟩`.
    pub score_minus: f64,
    /// Overlap with the planted permutation, when known.
    pub overlap_vs_planted: Option<f64>,
}

impl AlignmentResult {
    /// Records the overlap of `pi_hat` with a known planted permutation.
    pub fn with_planted(mut self, pi: &Permutation) -> Result<Self> {
        self.overlap_vs_planted = Some(overlap(&self.pi_hat, pi)?);
        Ok(self)
    }
}

/// EIG1: align the leading eigenvectors of `a` and `b`.
pub fn eig1(a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<AlignmentResult> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    let v1 = leading_pair(a)?.vector;
    let v1_prime = leading_pair(b)?.vector;
    eig1_with_vectors(a, b, &v1, &v1_prime)
}

/// EIG1 from precomputed leading eigenvectors of `a` and `b` (either sign).
///
/// Computes `Π₊ = align(v₁, v′₁)` and `Π₋ = align(v₁, −v′₁)` and returns the
/// one with the larger QAP score; `Π₊` wins ties.
pub fn eig1_with_vectors(
    a: &SymmetricMatrix,
    b: &SymmetricMatrix,
    v1: &[f64],
    v1_prime: &[f64],
) -> Result<AlignmentResult> {
    let plus = aligning_permutation(v1, v1_prime)?;
    let negated: Vec<f64> = v1_prime.iter().map(|y| -y).collect();
    let minus = aligning_permutation(v1, &negated)?;
    let score_plus = qap_score(a, b, &plus)?;
    let score_minus = qap_score(a, b, &minus)?;
    let chose_plus = score_plus >= score_minus;
    Ok(AlignmentResult {
        pi_hat: if chose_plus { plus } else { minus },
        chose_plus,
        score_plus,
        score_minus,
        overlap_vs_planted: None,
    })
}
