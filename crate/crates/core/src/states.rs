//! Normalized state vectors and inner products.
//!
//! A state on n qubits is its N = 2^n complex coefficients over the
//! basis |ℓ⟩ = b(ℓ)·ψ₀. Global phase is significant throughout the crate:
//! two states are equal only componentwise, because the overall phase is
//! one of the 2N−1 control parameters.

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::{Complex64, MAX_VECTOR_QUBITS};

/// Tolerance on Σ|c|² − 1 accepted by the exact constructor.
pub const NORM_TOL: f64 = 1e-9;

/// Sign selecting one of the two Bell combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Normalized coefficient vector of an n-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl StateVector {
    fn check_shape(n: usize, len: usize) -> Result<()> {
        if n == 0 || n > MAX_VECTOR_QUBITS {
            return Err(Error::VectorLimitExceeded {
                n,
                max: MAX_VECTOR_QUBITS,
            });
        }
        let dim = 1usize << n;
        if len != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: len,
            });
        }
        Ok(())
    }

    /// Builds a state, rescaling the coefficients to unit norm. Rejects
    /// an all-zero vector.
    pub fn normalized(n: usize, mut coeffs: Vec<Complex64>) -> Result<Self> {
        Self::check_shape(n, coeffs.len())?;
        let norm = coeffs.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::DegenerateInput(
                "cannot normalize the zero vector".to_string(),
            ));
        }
        for x in &mut coeffs {
            *x /= norm;
        }
        Ok(Self { n, coeffs })
    }

    /// Strict constructor: the coefficients must already be normalized
    /// within [`NORM_TOL`].
    pub fn exact(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        Self::check_shape(n, coeffs.len())?;
        let norm_sqr = coeffs.iter().map(|x| x.norm_sqr()).sum::<f64>();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { n, coeffs })
    }

    /// Basis state |ℓ⟩ = b(ℓ)·ψ₀: the unit vector with 1 at position ℓ.
    pub fn basis(n: usize, l: usize) -> Result<Self> {
        Self::check_shape(n, 1 << n)?;
        let dim = 1usize << n;
        if l >= dim {
            return Err(Error::IndexOutOfRange {
                index: l,
                limit: dim,
            });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
        coeffs[l] = Complex64::new(1.0, 0.0);
        Ok(Self { n, coeffs })
    }

    /// Two-qubit Bell state (|0⟩ ± |3⟩)/√2, the entangled combination
    /// that makes the plain group element singular.
    pub fn bell(sign: Sign) -> Self {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            n: 2,
            coeffs: vec![
                Complex64::new(inv_sqrt2, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(sign.as_f64() * inv_sqrt2, 0.0),
            ],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient count N = 2^n.
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product ⟨other|self⟩ = Σ_ℓ conj(other_ℓ)·self_ℓ.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                a: self.n,
                b: other.n,
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| b.conj() * a)
            .sum())
    }

    /// Largest componentwise distance to another state, global phase
    /// included.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n && self.max_abs_diff(other) <= tol
    }

    /// Applies a dense operator to the coefficients. The result is not
    /// renormalized; applying a unitary preserves the norm to rounding.
    pub fn apply(&self, op: &OperatorMatrix) -> Result<Self> {
        if op.n() != self.n {
            return Err(Error::QubitMismatch {
                a: op.n(),
                b: self.n,
            });
        }
        Ok(Self {
            n: self.n,
            coeffs: op.apply_vec(&self.coeffs)?,
        })
    }
}
