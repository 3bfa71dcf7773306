//! Spectral alignment of correlated GOE matrices.
//!
//! This crate holds the numerical core: GOE sampling and planted instances
//! ([`randmat`]), a dense symmetric eigensolver with eigenvalue statistics
//! ([`spectral`]), rank alignment and the EIG1 algorithm ([`align`]), the
//! correlated Gaussian vectors model `J(N, s)` with its exact and
//! semi-analytic evaluators ([`toymodel`]), and leading-eigenvector
//! perturbation diagnostics ([`perturbation`]).
//!
//! The crate is `no_std` and only needs `alloc`. Every randomized operation
//! takes an explicit random stream; [`rng`] derives independent,
//! order-insensitive streams from a master seed.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod align;
mod error;
mod matrix;
mod permutation;
pub mod perturbation;
pub mod quadrature;
pub mod randmat;
pub mod rng;
pub mod spectral;
pub mod stats;
pub mod toymodel;

pub use error::{Error, Result};
pub use matrix::{GoeMatrix, SymmetricMatrix};
pub use permutation::Permutation;
