use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A bijection of `{0, …, n−1}`, stored as its image table.
///
/// Indices are 0-based; [`Permutation::from_one_based`] and
/// [`Permutation::to_one_based`] convert at I/O boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// The identity of size `n`.
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Validates that `map` is a bijection of `{0, …, map.len()−1}`.
    pub fn from_vec(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &m in &map {
            if m >= n || seen[m] {
                return Err(Error::NotAPermutation);
            }
            seen[m] = true;
        }
        Ok(Self(map))
    }

    /// Builds from a 1-based image table.
    pub fn from_one_based(map: &[usize]) -> Result<Self> {
        let shifted = map
            .iter()
            .map(|&m| m.checked_sub(1).ok_or(Error::NotAPermutation))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vec(shifted)
    }

    /// 1-based image table.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&m| m + 1).collect()
    }

    /// Size of the permuted set.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `true` for the permutation of the empty set.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Image table.
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// The inverse map.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &m) in self.0.iter().enumerate() {
            inv[m] = i;
        }
        Self(inv)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self(other.0.iter().map(|&o| self.0[o]).collect()))
    }

    /// Number of indices where `self` and `other` agree.
    pub fn agreements(&self, other: &Self) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a == b).count())
    }

    /// `true` if this is the identity.
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &m)| i == m)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}
