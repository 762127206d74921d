//! Rotor parametrization of n-qubit quantum states.
//!
//! Any normalized state of an N = 2^n level system is reachable from the
//! reference state |0⟩ by a compact unitary built from 2N−1 real angles:
//! N−1 polar angles that set the coefficient magnitudes and N azimuthal
//! angles that set the coefficient phases. The polar generators are the
//! commuting bit-flip involutions b(ℓ) (tensor products of σ₁ selected by
//! the bits of ℓ) and the azimuthal generators are their diagonal σ₃
//! counterparts z(ℓ). Both families are diagonalized simultaneously by the
//! Walsh-Hadamard transform, so every forward path here is a pair of
//! O(N log N) butterflies rather than a dense exponential.
//!
//! The crate provides:
//!
//! - [`walsh`] — parity signs and the fast Walsh-Hadamard kernel, plus the
//!   quadratic reference transform used as a test oracle.
//! - [`operators`] — dense construction of the operator families b(ℓ),
//!   z(ℓ), the reference projector, anticommuting Clifford generators,
//!   alternative group-algebra bases, and Walsh-spectrum singularity
//!   detection.
//! - [`states`] — normalized state vectors, basis and Bell states, inner
//!   products.
//! - [`rotor`] — forward synthesis (angles → state), the full rotor
//!   unitary, inverse analysis (state → angles) via damped least squares,
//!   the single-qubit Euler closed form, and arbitrary state-to-state
//!   transformation rotors.
//! - [`hamiltonian`] — the coupled two-qubit example: matrix construction,
//!   closed-form spectrum, eigenstates, and their angle parametrizations.
//! - [`formats`] — the JSON file formats shared with the CLI.
//!
//! Dense matrices are capped at n ≤ 10 (1024×1024); vector-only paths
//! (synthesis, analysis, spectra) allow n ≤ 20. All values are immutable
//! after construction and safe to share across threads; analysis is
//! deterministic for a fixed seed.

pub mod error;
pub mod formats;
pub mod hamiltonian;
pub mod matrix;
pub mod operators;
pub mod rotor;
mod solver;
pub mod states;
pub mod walsh;

pub use error::Error;
pub use matrix::OperatorMatrix;
pub use rotor::{analyze, synthesize, Analysis, AnalyzeOptions, AngleSet, RotorUnitary};
pub use states::StateVector;

/// Complex scalar used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;

/// Largest qubit count for which dense N×N matrices are constructed.
pub const MAX_DENSE_QUBITS: usize = 10;

/// Largest qubit count for vector-only paths (states, spectra, analysis).
pub const MAX_VECTOR_QUBITS: usize = 20;
