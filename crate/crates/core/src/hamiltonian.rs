//! The coupled two-qubit example system.
//!
//! Two spin-1/2 moments in a common z-axis field with an isotropic
//! exchange coupling. In the flip basis the 4×4 matrix is diagonal except
//! for a single 2×2 block mixing components 1 and 2 (ℏ = 1):
//!
//! ```text
//! ⎛ ω₀₊₊ + λ/2       0            0           0      ⎞
//! ⎜     0       ω₀₊₋ − λ/2        λ           0      ⎟
//! ⎜     0            λ       ω₀₋₊ − λ/2       0      ⎟
//! ⎝     0            0            0      ω₀₋₋ + λ/2  ⎠
//! ```
//!
//! with ω₀±± = ω₀ ± ω₁ ± ω₂. Components 0 and 3 are exact eigenstates;
//! the middle block reduces to (ω₀ − λ/2)·1 + [[Δ, λ], [λ, −Δ]] with
//! Δ = ω₁ − ω₂, giving the mixed pair ω₀ − λ/2 ± √(Δ² + λ²).
//!
//! Energies are reported in the block-diagonal labeling order
//! (++, mixed+, mixed−, −−), not sorted by value, so entries line up
//! with the matrix layout for any parameter signs.

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::rotor::{analyze, Analysis, AnalyzeOptions};
use crate::states::StateVector;
use crate::Complex64;

/// Angular frequencies and coupling of the two-qubit system, ℏ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledQubitParams {
    pub omega0: f64,
    pub omega1: f64,
    pub omega2: f64,
    /// Half the spin-spin coupling constant 2λ.
    pub lambda: f64,
}

impl CoupledQubitParams {
    pub fn new(omega0: f64, omega1: f64, omega2: f64, lambda: f64) -> Result<Self> {
        let p = Self {
            omega0,
            omega1,
            omega2,
            lambda,
        };
        if [omega0, omega1, omega2, lambda].iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "parameters must be finite".to_string(),
            ));
        }
        Ok(p)
    }

    /// Maps the operator form E₀ + γ₁s₁·B⊗1 + 1⊗γ₂s₂·B + 2λs₁·s₂ with
    /// the field along z onto the frequency parameters: ω₀ = E₀ and
    /// ω_j = γ_j·B/2.
    pub fn from_operator_form(
        e0: f64,
        gamma1: f64,
        gamma2: f64,
        b_field: f64,
        lambda: f64,
    ) -> Result<Self> {
        Self::new(e0, 0.5 * gamma1 * b_field, 0.5 * gamma2 * b_field, lambda)
    }

    /// Detuning Δ = ω₁ − ω₂ of the mixed block.
    pub fn delta(&self) -> f64 {
        self.omega1 - self.omega2
    }
}

/// Closed-form spectrum with eigenstates in the labeling order
/// (++, mixed+, mixed−, −−).
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub energies: [f64; 4],
    pub eigenstates: Vec<StateVector>,
    pub delta: f64,
}

/// Dense 4×4 Hamiltonian.
pub fn hamiltonian_matrix(p: &CoupledQubitParams) -> OperatorMatrix {
    let diag = [
        p.omega0 + p.omega1 + p.omega2 + 0.5 * p.lambda,
        p.omega0 + p.omega1 - p.omega2 - 0.5 * p.lambda,
        p.omega0 - p.omega1 + p.omega2 - 0.5 * p.lambda,
        p.omega0 - p.omega1 - p.omega2 + 0.5 * p.lambda,
    ];
    OperatorMatrix::from_fn(2, true, false, |r, c| {
        if r == c {
            Complex64::new(diag[r], 0.0)
        } else if (r, c) == (1, 2) || (r, c) == (2, 1) {
            Complex64::new(p.lambda, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .expect("n = 2 is always constructible")
}

/// Closed-form eigenenergies in labeling order:
/// ω₀₊₊ + λ/2, then ω₀ − λ/2 ± √(Δ² + λ²), then ω₀₋₋ + λ/2.
pub fn eigenenergies(p: &CoupledQubitParams) -> [f64; 4] {
    let split = (p.delta().powi(2) + p.lambda.powi(2)).sqrt();
    [
        p.omega0 + p.omega1 + p.omega2 + 0.5 * p.lambda,
        p.omega0 - 0.5 * p.lambda + split,
        p.omega0 - 0.5 * p.lambda - split,
        p.omega0 - p.omega1 - p.omega2 + 0.5 * p.lambda,
    ]
}

/// Eigenstates paired with [`eigenenergies`].
///
/// |0⟩ and |3⟩ pass through unchanged; the mixed pair diagonalizes
/// [[Δ, λ], [λ, −Δ]] on components 1 and 2 with mixing angle
/// γ = atan2(λ, Δ). The doubly degenerate point Δ = λ = 0 falls out as
/// γ = 0, returning the plain basis pair |1⟩, |2⟩.
pub fn eigenstates(p: &CoupledQubitParams) -> SpectrumReport {
    let gamma = p.lambda.atan2(p.delta());
    let (sin, cos) = (0.5 * gamma).sin_cos();
    let zero = Complex64::new(0.0, 0.0);
    let mixed_plus = StateVector::exact(
        2,
        vec![zero, Complex64::new(cos, 0.0), Complex64::new(sin, 0.0), zero],
    )
    .expect("unit 2-vector embedding");
    let mixed_minus = StateVector::exact(
        2,
        vec![zero, Complex64::new(-sin, 0.0), Complex64::new(cos, 0.0), zero],
    )
    .expect("unit 2-vector embedding");
    SpectrumReport {
        energies: eigenenergies(p),
        eigenstates: vec![
            StateVector::basis(2, 0).expect("n = 2"),
            mixed_plus,
            mixed_minus,
            StateVector::basis(2, 3).expect("n = 2"),
        ],
        delta: p.delta(),
    }
}

/// Angle parametrization of all four eigenstates via [`analyze`];
/// propagates a convergence failure from any of them.
pub fn parametrize_eigenstates(
    p: &CoupledQubitParams,
    opts: &AnalyzeOptions,
) -> Result<Vec<Analysis>> {
    eigenstates(p)
        .eigenstates
        .iter()
        .map(|state| analyze(state, opts))
        .collect()
}
