//! Error type shared by all modules.

use crate::rotor::Analysis;

/// Errors produced by construction and analysis routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An operator, basis, or coefficient index is outside `[0, limit)`.
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    /// A vector length must be a power of two.
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    /// A vector has the wrong length for the declared qubit count.
    #[error("expected length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// Two operands live on different qubit counts.
    #[error("qubit count mismatch: {a} vs {b}")]
    QubitMismatch { a: usize, b: usize },

    /// Dense matrices are limited to `MAX_DENSE_QUBITS` qubits.
    #[error("n = {n} exceeds the dense-matrix limit of {max} qubits")]
    DenseLimitExceeded { n: usize, max: usize },

    /// Vector paths are limited to `MAX_VECTOR_QUBITS` qubits.
    #[error("n = {n} exceeds the vector-path limit of {max} qubits")]
    VectorLimitExceeded { n: usize, max: usize },

    /// A matrix expected to be hermitian is not, within tolerance.
    #[error("matrix is not hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    /// A state or coefficient pair is not normalized, within tolerance.
    #[error("input is not normalized (squared norm {0})")]
    NotNormalized(f64),

    /// Input that is identically zero or otherwise carries no information.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A supplied value is invalid (non-finite angle, non-unimodular
    /// phase, bad option).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The magnitude fit exhausted its restarts without reaching the
    /// requested tolerance. Carries the best angles found.
    #[error("analysis did not converge: residual {residual:.3e} after {restarts} restarts")]
    ConvergenceFailure {
        residual: f64,
        restarts: u32,
        best: Box<Analysis>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
