//! Dense complex operator matrices.
//!
//! `OperatorMatrix` is the container for all dense operators in the crate:
//! Pauli matrices, the b(ℓ)/z(ℓ) families, projectors, group-algebra
//! elements, and rotor unitaries. Storage is an N×N complex matrix with
//! N = 2^n; rows and columns are indexed by the same group index ℓ as
//! state coefficients.
//!
//! Construction routines tag hermiticity/unitarity flags. The flags are
//! conservative certificates: a set flag guarantees the property (and
//! [`OperatorMatrix::verify_flags`] checks it numerically), an unset flag
//! promises nothing.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::{Complex64, MAX_DENSE_QUBITS};

/// Dense N×N complex operator on n qubits, N = 2^n.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    n: usize,
    matrix: DMatrix<Complex64>,
    hermitian: bool,
    unitary: bool,
}

impl OperatorMatrix {
    /// Wraps a dense matrix, validating the 2^n dimension and the dense
    /// size cap.
    pub fn from_matrix(
        n: usize,
        matrix: DMatrix<Complex64>,
        hermitian: bool,
        unitary: bool,
    ) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::DenseLimitExceeded {
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let dim = 1usize << n;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(Self {
            n,
            matrix,
            hermitian,
            unitary,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        Self::from_matrix(n, DMatrix::identity(dim, dim), true, true)
    }

    /// Builds entries from a closure over (row, col).
    pub fn from_fn<F>(n: usize, hermitian: bool, unitary: bool, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Complex64,
    {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::DenseLimitExceeded {
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let dim = 1usize << n;
        Ok(Self {
            n,
            matrix: DMatrix::from_fn(dim, dim, f),
            hermitian,
            unitary,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix dimension N = 2^n.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn hermitian_flag(&self) -> bool {
        self.hermitian
    }

    pub fn unitary_flag(&self) -> bool {
        self.unitary
    }

    /// Frobenius norm of M − M†.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).norm()
    }

    /// Frobenius norm of M†M − I.
    pub fn unitarity_error(&self) -> f64 {
        let dim = self.dim();
        (self.matrix.adjoint() * &self.matrix - DMatrix::<Complex64>::identity(dim, dim)).norm()
    }

    /// Checks that every set flag holds numerically within `tol`.
    pub fn verify_flags(&self, tol: f64) -> Result<()> {
        if self.hermitian {
            let err = self.hermiticity_error();
            if err > tol {
                return Err(Error::NotHermitian(err));
            }
        }
        if self.unitary {
            let err = self.unitarity_error();
            if err > tol {
                return Err(Error::InvalidArgument(format!(
                    "unitary flag set but U†U − I has norm {err:.3e}"
                )));
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                a: self.n,
                b: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            matrix: &self.matrix * &other.matrix,
            hermitian: false,
            unitary: self.unitary && other.unitary,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                a: self.n,
                b: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            matrix: &self.matrix + &other.matrix,
            hermitian: self.hermitian && other.hermitian,
            unitary: false,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            n: self.n,
            matrix: &self.matrix * factor,
            hermitian: self.hermitian && factor.im == 0.0,
            unitary: self.unitary && (factor.norm() - 1.0).abs() < 1e-15,
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n: self.n,
            matrix: self.matrix.adjoint(),
            hermitian: self.hermitian,
            unitary: self.unitary,
        }
    }

    /// Kronecker product; qubit counts add.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let matrix = self.matrix.kronecker(&other.matrix);
        Self::from_matrix(
            self.n + other.n,
            matrix,
            self.hermitian && other.hermitian,
            self.unitary && other.unitary,
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }

    /// Matrix-vector product on raw coefficients.
    pub fn apply_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        let out = &self.matrix * DVector::from_column_slice(v);
        Ok(out.iter().copied().collect())
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        self.matrix.column(col).iter().copied().collect()
    }

    /// Frobenius norm of the difference.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    /// exp(−i·t·M) for hermitian M, via exact eigendecomposition.
    ///
    /// This is the dense oracle the spectral rotor paths are tested
    /// against; it never takes the Walsh shortcut. Rejects matrices whose
    /// hermiticity error exceeds 1e−10.
    pub fn expm_hermitian(&self, t: f64) -> Result<Self> {
        let err = self.hermiticity_error();
        if err > 1e-10 {
            return Err(Error::NotHermitian(err));
        }
        let eig = self.matrix.clone().symmetric_eigen();
        let phases = DVector::from_iterator(
            self.dim(),
            eig.eigenvalues
                .iter()
                .map(|&w| (Complex64::new(0.0, -t * w)).exp()),
        );
        let matrix = &eig.eigenvectors
            * DMatrix::from_diagonal(&phases)
            * eig.eigenvectors.adjoint();
        Ok(Self {
            n: self.n,
            matrix,
            hermitian: false,
            unitary: true,
        })
    }

    /// Entries as row-major [re, im] pairs for serialization.
    pub fn rows_as_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.dim())
            .map(|r| {
                (0..self.dim())
                    .map(|c| {
                        let x = self.matrix[(r, c)];
                        [x.re, x.im]
                    })
                    .collect()
            })
            .collect()
    }
}
