/// Errors reported by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A dimension was zero or otherwise unusable.
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    /// Two operands have incompatible sizes.
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch {
        /// Size required by the first operand.
        expected: usize,
        /// Size actually supplied.
        found: usize,
    },
    /// A matrix that must be symmetric is not.
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric {
        /// Row of the offending entry.
        row: usize,
        /// Column of the offending entry.
        col: usize,
    },
    /// NaN or infinity in the input.
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    /// The map is not a bijection of `{0..n}`.
    #[error("not a permutation")]
    NotAPermutation,
    /// `λ₁ − λ₂` is too small to single out a leading eigenvector.
    #[error("degenerate top eigenvalue: gap {gap:e}")]
    DegenerateGap {
        /// The offending gap `λ₁ − λ₂`.
        gap: f64,
    },
    /// An inner product that fixes a sign is exactly zero.
    #[error("degenerate sign: inner product is zero")]
    DegenerateSign,
    /// A scalar parameter is outside its domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        /// Parameter name.
        name: &'static str,
        /// Constraint that was violated.
        reason: &'static str,
    },
    /// The tridiagonal QL iteration did not converge.
    #[error("eigensolver did not converge for eigenvalue {0}")]
    NoConvergence(usize),
    /// Numerical integration did not reach its tolerance.
    #[error("quadrature did not converge: value {value}, error estimate {estimate:e}")]
    Quadrature {
        /// Last value computed.
        value: f64,
        /// Achieved error estimate.
        estimate: f64,
    },
    /// Cell probabilities of a multinomial left `[0, 1]`.
    #[error("cell probabilities sum to {0}, expected < 1")]
    ProbabilityOutOfRange(f64),
}

/// Result alias for the numerical core.
pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Error {
    Error::InvalidParameter { name, reason }
}
