//! GOE sampling, random permutations and planted correlated instances.
//!
//! The planted model draws two independent GOE matrices `A`, `H` and
//! observes `B[k][l] = (A + σH)[π(k)][π(l)]`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::invalid;
use crate::rng::stream_from_seed;
use crate::{Error, GoeMatrix, Permutation, Result, SymmetricMatrix};

/// Samples a normalized GOE matrix.
///
/// Off-diagonal entries are `N(0, 1/n)`, diagonal entries `N(0, 2/n)`. The
/// upper triangle is drawn row by row, so the output is a pure function of
/// the stream state.
pub fn sample_goe<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<GoeMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let off = 1.0 / libm::sqrt(n as f64);
    let diag = core::f64::consts::SQRT_2 * off;
    Ok(SymmetricMatrix::from_upper_fn(n, |i, j| {
        let g: f64 = StandardNormal.sample(rng);
        if i == j {
            diag * g
        } else {
            off * g
        }
    }))
}

/// Uniform random permutation (Fisher–Yates).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Permutation::from_vec(map)
}

/// `result[k][l] = m[pi(k)][pi(l)]`, i.e. `Πᵀ M Π` for `Π[i][j] = 1 ⇔ i = π(j)`.
pub fn conjugate_by_permutation(m: &SymmetricMatrix, pi: &Permutation) -> Result<SymmetricMatrix> {
    m.conjugate(pi)
}

/// A planted instance of the correlated GOE alignment model.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance {
    /// Dimension.
    pub n: usize,
    /// Noise level σ.
    pub sigma: f64,
    /// Planted relabeling π.
    pub pi: Permutation,
    /// Signal matrix.
    pub a: GoeMatrix,
    /// Noise matrix.
    pub h: GoeMatrix,
    /// Observation `(A + σH)` relabeled by π.
    pub b: SymmetricMatrix,
    /// Seed of the stream the instance was drawn from, when known.
    pub seed: Option<u64>,
}

/// Draws `A`, `H` (in that order) from `rng` and builds `B` by relabeling
/// `A + σH` with `pi`.
pub fn plant_instance<R: Rng + ?Sized>(
    n: usize,
    sigma: f64,
    pi: Permutation,
    rng: &mut R,
) -> Result<PlantedInstance> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(invalid("sigma", "must be finite and nonnegative"));
    }
    if pi.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: pi.len(),
        });
    }
    let a = sample_goe(n, rng)?;
    let h = sample_goe(n, rng)?;
    let b = a.add_scaled(&h, sigma)?.conjugate(&pi)?;
    Ok(PlantedInstance {
        n,
        sigma,
        pi,
        a,
        h,
        b,
        seed: None,
    })
}

impl PlantedInstance {
    /// Draws an instance from a seed. With `pi == None` a uniform permutation
    /// is drawn first from the same stream.
    pub fn from_seed(n: usize, sigma: f64, pi: Option<Permutation>, seed: u64) -> Result<Self> {
        let mut rng = stream_from_seed(seed);
        let pi = match pi {
            Some(p) => p,
            None => random_permutation(n, &mut rng)?,
        };
        let mut inst = plant_instance(n, sigma, pi, &mut rng)?;
        inst.seed = Some(seed);
        Ok(inst)
    }

    /// `A + σH` in the original labeling.
    pub fn unpermuted_b(&self) -> SymmetricMatrix {
        self.a
            .add_scaled(&self.h, self.sigma)
            .expect("A and H share a dimension")
    }
}
