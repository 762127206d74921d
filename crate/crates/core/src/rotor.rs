//! Forward synthesis, the rotor unitary, and inverse analysis.
//!
//! A full rotor is the product of an azimuthal factor generated by the
//! diagonal z(ℓ) family and a polar factor generated by the b(ℓ) family:
//!
//! ```text
//! R(θ, φ) = exp(−(i/2)·Σ_ℓ φ_ℓ z(ℓ)) · exp(−(i/2)·Σ_ℓ θ_ℓ b(ℓ))
//! ```
//!
//! Both families commute internally and are diagonalized by the Walsh
//! transform, so every path here works in the spectral domain:
//!
//! - polar coefficients: c = W·exp(−(i/2)·W·θ̃)/N with θ̃ = (0, θ₁, …);
//! - azimuthal phases: coefficient ℓ picks up exp(−(i/2)·α_ℓ) with
//!   α = W·φ;
//! - synthesis: d_ℓ = c_ℓ(θ)·exp(−(i/2)·α_ℓ), which is the first column
//!   of R.
//!
//! Analysis inverts this in two stages: a damped least-squares fit of the
//! polar angles to the coefficient magnitudes (the only nonlinear part),
//! then an exact linear solve of the azimuthal angles from the phase
//! mismatch. Angles are not unique; the contract is that resynthesis
//! reproduces the target componentwise, global phase included.
//!
//! Angles are stored as unconstrained reals (the rotor is 4π-periodic at
//! spinor level); [`AngleSet::reduced`] canonicalizes into (−2π, 2π] when
//! wanted.

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::solver;
use crate::states::StateVector;
use crate::walsh::{fwht_in_place, fwht_real, parity_sign};
use crate::{Complex64, MAX_VECTOR_QUBITS};

pub use crate::solver::{magnitude_jacobian, magnitude_residuals};

/// The 2N−1 control angles of an n-qubit rotor: N−1 polar angles θ_ℓ
/// (ℓ = 1..N−1; the identity direction carries none) and N azimuthal
/// angles φ_ℓ.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSet {
    n: usize,
    theta: Vec<f64>,
    phi: Vec<f64>,
}

impl AngleSet {
    pub fn new(n: usize, theta: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_VECTOR_QUBITS {
            return Err(Error::VectorLimitExceeded {
                n,
                max: MAX_VECTOR_QUBITS,
            });
        }
        let dim = 1usize << n;
        if theta.len() != dim - 1 {
            return Err(Error::LengthMismatch {
                expected: dim - 1,
                actual: theta.len(),
            });
        }
        if phi.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: phi.len(),
            });
        }
        if theta.iter().chain(phi.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "angles must be finite".to_string(),
            ));
        }
        Ok(Self { n, theta, phi })
    }

    /// The identity rotor's angles.
    pub fn zero(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        Self::new(n, vec![0.0; dim - 1], vec![0.0; dim])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Polar angles θ_1..θ_{N−1}.
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Azimuthal angles φ_0..φ_{N−1}.
    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// Total number of real parameters, always 2^{n+1} − 1.
    pub fn parameter_count(&self) -> usize {
        self.theta.len() + self.phi.len()
    }

    /// Every angle mapped into (−2π, 2π], the 4π spinor period.
    pub fn reduced(&self) -> Self {
        let period = 4.0 * std::f64::consts::PI;
        let half = 2.0 * std::f64::consts::PI;
        let fold = |x: &f64| {
            let r = x.rem_euclid(period);
            if r > half {
                r - period
            } else {
                r
            }
        };
        Self {
            n: self.n,
            theta: self.theta.iter().map(fold).collect(),
            phi: self.phi.iter().map(fold).collect(),
        }
    }
}

/// The N derived phases α = W·φ linking azimuthal angles to coefficient
/// phases.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    alpha: Vec<f64>,
}

impl PhaseVector {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() || !alpha.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(alpha.len()));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }
}

/// Dense unitary of a full rotor.
#[derive(Debug, Clone)]
pub struct RotorUnitary {
    matrix: OperatorMatrix,
}

impl RotorUnitary {
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        state.apply(&self.matrix)
    }
}

fn check_theta_len(len: usize) -> Result<usize> {
    let dim = len + 1;
    if !dim.is_power_of_two() {
        return Err(Error::LengthMismatch {
            expected: dim.next_power_of_two() - 1,
            actual: len,
        });
    }
    Ok(dim)
}

/// Coefficients of the polar factor exp(−(i/2)·Σ θ_ℓ b(ℓ)) expanded over
/// the b(ℓ) basis.
///
/// `theta` holds the N−1 angles for ℓ = 1..N−1; θ₀ is implicitly zero.
/// The result is automatically normalized: the spectral phases are
/// unimodular, so Σ|c_ℓ|² = 1 by the transform's Parseval identity.
pub fn polar_coefficients(theta: &[f64]) -> Result<Vec<Complex64>> {
    let dim = check_theta_len(theta.len())?;
    let mut tilde = vec![0.0; dim];
    tilde[1..].copy_from_slice(theta);
    let spectral = fwht_real(&tilde)?;
    let mut c: Vec<Complex64> = spectral
        .iter()
        .map(|&s| Complex64::from_polar(1.0, -0.5 * s))
        .collect();
    fwht_in_place(&mut c)?;
    let scale = 1.0 / dim as f64;
    for x in &mut c {
        *x *= scale;
    }
    Ok(c)
}

/// Derived phases α = W·φ.
pub fn phases_from_phi(phi: &[f64]) -> Result<PhaseVector> {
    PhaseVector::new(fwht_real(phi)?)
}

/// Inverse of [`phases_from_phi`]: φ = W·α/N.
pub fn phi_from_phases(phases: &PhaseVector) -> Vec<f64> {
    let dim = phases.alpha().len();
    let mut phi = fwht_real(phases.alpha()).expect("validated power-of-two length");
    let scale = 1.0 / dim as f64;
    for x in &mut phi {
        *x *= scale;
    }
    phi
}

/// The state R(θ, φ)·ψ₀: polar coefficients with the azimuthal phase
/// exp(−(i/2)·α_ℓ) attached to coefficient ℓ.
pub fn synthesize(angles: &AngleSet) -> StateVector {
    let c = polar_coefficients(angles.theta()).expect("angle set is shape-checked");
    let alpha = fwht_real(angles.phi()).expect("angle set is shape-checked");
    let coeffs: Vec<Complex64> = c
        .iter()
        .zip(alpha.iter())
        .map(|(x, &a)| x * Complex64::from_polar(1.0, -0.5 * a))
        .collect();
    StateVector::normalized(angles.n(), coeffs).expect("rotor output has unit norm")
}

/// Dense matrix of the full rotor, built spectrally: the azimuthal
/// factor is diagonal and the polar factor is W·diag(u)·W/N.
pub fn rotor_matrix(angles: &AngleSet) -> Result<RotorUnitary> {
    let dim = 1usize << angles.n();
    let alpha = fwht_real(angles.phi())?;
    let mut tilde = vec![0.0; dim];
    tilde[1..].copy_from_slice(angles.theta());
    let spectral = fwht_real(&tilde)?;
    let u: Vec<Complex64> = spectral
        .iter()
        .map(|&s| Complex64::from_polar(1.0, -0.5 * s))
        .collect();
    let row_phases: Vec<Complex64> = alpha
        .iter()
        .map(|&a| Complex64::from_polar(1.0, -0.5 * a))
        .collect();

    let mut matrix = nalgebra::DMatrix::zeros(dim, dim);
    let scale = 1.0 / dim as f64;
    let mut column = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..dim {
        for (k, slot) in column.iter_mut().enumerate() {
            *slot = u[k] * parity_sign(k, j) as f64;
        }
        fwht_in_place(&mut column)?;
        for k in 0..dim {
            matrix[(k, j)] = column[k] * row_phases[k] * scale;
        }
    }
    Ok(RotorUnitary {
        matrix: OperatorMatrix::from_matrix(angles.n(), matrix, false, true)?,
    })
}

/// Options for [`analyze`].
#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    /// Componentwise resynthesis tolerance.
    pub tol: f64,
    /// Amplitudes below this are treated as exact zeros when solving
    /// phases; their azimuthal contribution is pinned to zero.
    pub zero_tol: f64,
    /// Seeded random restarts after the heuristic start.
    pub max_restarts: u32,
    /// Iteration budget per start.
    pub max_iterations: u64,
    /// Seed for the restart stream; fixed seed means a deterministic
    /// result regardless of caller threading.
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            zero_tol: 1e-12,
            max_restarts: 32,
            max_iterations: 250,
            seed: 0,
        }
    }
}

/// Result of a successful (or best-effort) analysis.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub angles: AngleSet,
    /// Largest componentwise deviation of the resynthesized state from
    /// the target.
    pub residual: f64,
    /// Random restarts consumed (0 when the heuristic start converged).
    pub restarts: u32,
    /// Total damped least-squares iterations across all starts.
    pub iterations: u64,
}

/// Recovers a full angle set for an arbitrary normalized target state.
///
/// Stage 1 fits the polar angles to the coefficient magnitudes by damped
/// least squares with the analytic Jacobian, restarting from seeded
/// random points on failure. Stage 2 solves the azimuthal angles exactly:
/// α_ℓ = 2·(arg c_ℓ(θ) − arg d_ℓ) wherever |d_ℓ| ≥ `zero_tol` (zero
/// elsewhere), then φ = W·α/N.
///
/// Angles are not unique; success means `synthesize(analysis.angles)`
/// matches the target componentwise within `opts.tol`. On failure the
/// error carries the best angles found.
pub fn analyze(target: &StateVector, opts: &AnalyzeOptions) -> Result<Analysis> {
    if opts.tol <= 0.0 || opts.zero_tol <= 0.0 {
        return Err(Error::InvalidArgument(
            "tolerances must be positive".to_string(),
        ));
    }
    let mags: Vec<f64> = target.coeffs().iter().map(|x| x.norm()).collect();
    let fit = solver::fit_magnitudes(&mags, opts);

    let c = polar_coefficients(&fit.theta)?;
    let dim = c.len();
    let alpha: Vec<f64> = c
        .iter()
        .zip(target.coeffs().iter())
        .map(|(found, want)| {
            if want.norm() >= opts.zero_tol {
                2.0 * (found.arg() - want.arg())
            } else {
                0.0
            }
        })
        .collect();
    let mut phi = fwht_real(&alpha)?;
    let scale = 1.0 / dim as f64;
    for x in &mut phi {
        *x *= scale;
    }

    let angles = AngleSet::new(target.n(), fit.theta, phi)?;
    let residual = synthesize(&angles).max_abs_diff(target);
    let analysis = Analysis {
        angles,
        residual,
        restarts: fit.restarts,
        iterations: fit.iterations,
    };
    if residual <= opts.tol {
        Ok(analysis)
    } else {
        Err(Error::ConvergenceFailure {
            residual,
            restarts: analysis.restarts,
            best: Box::new(analysis),
        })
    }
}

/// Euler angles (φ, θ, χ) of a single-qubit rotor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta: f64,
    pub chi: f64,
}

/// Closed-form single-qubit analysis.
///
/// For a normalized pair (c₀, c₁) the polar angle is
/// θ = 2·atan2(|c₁|, |c₀|) and the azimuthal pair is pinned by exact
/// reconstruction through [`euler_rotor`]: φ = arg c₁ − arg c₀ and
/// χ = −(arg c₀ + arg c₁). At the poles (one coefficient vanishing) the
/// redundant angle is set to zero: (1, 0) returns all zeros.
pub fn euler_single_qubit(c0: Complex64, c1: Complex64) -> Result<EulerAngles> {
    let norm_sqr = c0.norm_sqr() + c1.norm_sqr();
    if (norm_sqr - 1.0).abs() > crate::states::NORM_TOL {
        return Err(Error::NotNormalized(norm_sqr));
    }
    let theta = 2.0 * c1.norm().atan2(c0.norm());
    const POLE_TOL: f64 = 1e-15;
    let (phi, chi) = if c1.norm() < POLE_TOL {
        (0.0, -2.0 * c0.arg())
    } else if c0.norm() < POLE_TOL {
        (2.0 * c1.arg(), 0.0)
    } else {
        (c1.arg() - c0.arg(), -(c0.arg() + c1.arg()))
    };
    Ok(EulerAngles { phi, theta, chi })
}

/// The three-factor single-qubit rotor
/// exp(−iφσ₃/2)·exp(−σ₁₃θ/2)·exp(−iχσ₃/2).
///
/// The bivector factor uses the sign convention whose first column is
/// (cos θ/2, sin θ/2), so that the first column of the product is
/// (e^{−i(φ+χ)/2}·cos θ/2, e^{i(φ−χ)/2}·sin θ/2).
pub fn euler_rotor(angles: &EulerAngles) -> OperatorMatrix {
    let half_theta = 0.5 * angles.theta;
    let (sin, cos) = half_theta.sin_cos();
    let left = [
        Complex64::from_polar(1.0, -0.5 * angles.phi),
        Complex64::from_polar(1.0, 0.5 * angles.phi),
    ];
    let right = [
        Complex64::from_polar(1.0, -0.5 * angles.chi),
        Complex64::from_polar(1.0, 0.5 * angles.chi),
    ];
    let rotation = [[cos, -sin], [sin, cos]];
    OperatorMatrix::from_fn(1, false, true, |r, c| {
        left[r] * rotation[r][c] * right[c]
    })
    .expect("2x2 construction cannot fail")
}

/// Unitary carrying state `a` to state `b`, built as
/// R(analyze(b))·R(analyze(a))†.
///
/// Only the action on `a` is pinned: U·a = b componentwise (global phase
/// included). U itself is one representative of the family of such
/// unitaries.
pub fn transform(a: &StateVector, b: &StateVector, opts: &AnalyzeOptions) -> Result<RotorUnitary> {
    if a.n() != b.n() {
        return Err(Error::QubitMismatch { a: a.n(), b: b.n() });
    }
    let rotor_a = rotor_matrix(&analyze(a, opts)?.angles)?;
    let rotor_b = rotor_matrix(&analyze(b, opts)?.angles)?;
    let matrix = rotor_b.matrix().mul(&rotor_a.matrix().adjoint())?;
    Ok(RotorUnitary { matrix })
}
