//! JSON file formats shared between the library and the CLI.
//!
//! Complex values are serialized as `[re, im]` pairs in index order; all
//! structures keep a fixed field order, so serializing the same data
//! twice is byte-identical and floats round-trip exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::CoupledQubitParams;
use crate::matrix::OperatorMatrix;
use crate::rotor::{Analysis, AngleSet};
use crate::states::StateVector;
use crate::Complex64;

/// State file: `{"n": int, "coeffs": [[re, im], …]}` in index order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(state: &StateVector) -> Self {
        Self {
            n: state.n(),
            coeffs: state.coeffs().iter().map(|x| [x.re, x.im]).collect(),
        }
    }

    fn complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect()
    }

    /// Squared-norm deviation |Σ|c|² − 1| of the raw coefficients.
    pub fn norm_sqr_deviation(&self) -> f64 {
        let norm_sqr: f64 = self.coeffs.iter().map(|[re, im]| re * re + im * im).sum();
        (norm_sqr - 1.0).abs()
    }

    /// Converts, rescaling to unit norm.
    pub fn to_state_normalized(&self) -> Result<StateVector> {
        StateVector::normalized(self.n, self.complex_coeffs())
    }

    /// Converts, rejecting coefficients that are not already normalized.
    pub fn to_state_exact(&self) -> Result<StateVector> {
        StateVector::exact(self.n, self.complex_coeffs())
    }
}

/// Angle file: `{"n": int, "theta": [float; N−1], "phi": [float; N]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AngleFile {
    pub n: usize,
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
}

impl AngleFile {
    pub fn from_angles(angles: &AngleSet) -> Self {
        Self {
            n: angles.n(),
            theta: angles.theta().to_vec(),
            phi: angles.phi().to_vec(),
        }
    }

    pub fn to_angles(&self) -> Result<AngleSet> {
        AngleSet::new(self.n, self.theta.clone(), self.phi.clone())
    }
}

/// Analysis report: angles plus solver diagnostics and any input
/// warnings (for example a renormalized state).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub angles: AngleFile,
    pub residual: f64,
    pub restarts: u32,
    pub iterations: u64,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn from_analysis(analysis: &Analysis, warnings: Vec<String>) -> Self {
        Self {
            angles: AngleFile::from_angles(&analysis.angles),
            residual: analysis.residual,
            restarts: analysis.restarts,
            iterations: analysis.iterations,
            warnings,
        }
    }
}

/// Matrix dump: `{"n": int, "name": string, "rows": [[[re, im], …], …]}`
/// with rows in row-major order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub name: String,
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_operator(name: impl Into<String>, op: &OperatorMatrix) -> Self {
        Self {
            n: op.n(),
            name: name.into(),
            rows: op.rows_as_pairs(),
        }
    }
}

/// Walsh spectrum dump with the singularity verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub n: usize,
    pub spectrum: Vec<[f64; 2]>,
    pub singular: bool,
}

/// Input parameters of the coupled-qubit pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HamiltonianInput {
    pub omega0: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub lambda: f64,
}

impl HamiltonianInput {
    pub fn to_params(&self) -> Result<CoupledQubitParams> {
        CoupledQubitParams::new(self.omega0, self.omega1, self.omega2, self.lambda)
    }
}

/// Output of the coupled-qubit pipeline: labeling-ordered energies, the
/// detuning, the eigenstates, and their angle parametrizations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HamiltonianReport {
    pub energies: [f64; 4],
    pub delta: f64,
    pub eigenstates: Vec<StateFile>,
    pub angles: Vec<AngleFile>,
}

/// Output of a transformation: the unitary plus its verification record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformReport {
    pub unitary: MatrixFile,
    pub action_error: f64,
    pub unitarity_error: f64,
}

/// Parses any of the file formats with a uniform error.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("malformed JSON: {e}")))
}

/// Serializes with a trailing newline; identical inputs give identical
/// bytes.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("formats contain only plain data");
    text.push('\n');
    text
}
