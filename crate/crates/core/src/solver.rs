//! Damped least-squares fit of polar angles to coefficient magnitudes.
//!
//! The forward map sends θ ∈ R^{N−1} (θ₀ ≡ 0) through two Walsh
//! transforms: s = W·θ̃, u = exp(−i·s/2), c = W·u/N. The fit minimizes
//! Σ_ℓ (|c_ℓ(θ)|² − m_ℓ²)² over θ for target magnitudes m. Squared
//! magnitudes keep the objective smooth where coefficients vanish.
//!
//! The residual Jacobian is analytic. With h_ℓ(k) = Im(conj(c_ℓ)·u_k),
//! the character product W_{ℓk}·W_{kj} = W_{k,ℓ⊕j} collapses each row to
//! a single transform: ∂r_ℓ/∂θ_j = (W·h_ℓ)_{ℓ⊕j} / N.
//!
//! Levenberg-style damping on the normal equations, a magnitude-arcsine
//! initial guess, and seeded uniform restarts make the solve
//! deterministic for a fixed seed.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rotor::AnalyzeOptions;
use crate::walsh::{fwht_in_place, fwht_real};
use crate::Complex64;

/// Outcome of the magnitude fit; angles only, phases are solved
/// separately. Whether the fit is good enough is judged by the caller's
/// resynthesis residual, not here.
pub(crate) struct FitResult {
    pub theta: Vec<f64>,
    pub iterations: u64,
    pub restarts: u32,
}

/// Polar coefficients c(θ) together with the spectral phases u.
fn forward(theta: &[f64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let dim = theta.len() + 1;
    let mut tilde = vec![0.0; dim];
    tilde[1..].copy_from_slice(theta);
    let spectral = fwht_real(&tilde).expect("theta length fixed by caller");
    let u: Vec<Complex64> = spectral
        .iter()
        .map(|&s| Complex64::from_polar(1.0, -0.5 * s))
        .collect();
    let mut c = u.clone();
    fwht_in_place(&mut c).expect("power-of-two length");
    let scale = 1.0 / dim as f64;
    for x in &mut c {
        *x *= scale;
    }
    (c, u)
}

/// Residual vector r_ℓ = |c_ℓ(θ)|² − m_ℓ².
pub fn magnitude_residuals(theta: &[f64], target_mag2: &[f64]) -> Vec<f64> {
    let (c, _) = forward(theta);
    c.iter()
        .zip(target_mag2.iter())
        .map(|(x, &m2)| x.norm_sqr() - m2)
        .collect()
}

/// Analytic Jacobian of [`magnitude_residuals`] with respect to θ;
/// N rows by N−1 columns.
pub fn magnitude_jacobian(theta: &[f64]) -> DMatrix<f64> {
    let dim = theta.len() + 1;
    let (c, u) = forward(theta);
    let scale = 1.0 / dim as f64;
    let mut jac = DMatrix::zeros(dim, dim - 1);
    let mut row = vec![0.0; dim];
    for l in 0..dim {
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = (c[l].conj() * u[k]).im;
        }
        let transformed = fwht_real(&row).expect("power-of-two length");
        for j in 1..dim {
            jac[(l, j - 1)] = transformed[l ^ j] * scale;
        }
    }
    jac
}

/// Componentwise error bound implied by a magnitude mismatch: exact for
/// amplitudes above `zero_tol` (their phases will be matched exactly),
/// conservative below it (their phases stay unadjusted).
fn component_error(c: &[Complex64], target_mag: &[f64], zero_tol: f64) -> f64 {
    c.iter()
        .zip(target_mag.iter())
        .map(|(x, &m)| {
            if m >= zero_tol {
                (x.norm() - m).abs()
            } else {
                x.norm() + m
            }
        })
        .fold(0.0, f64::max)
}

struct StartOutcome {
    theta: Vec<f64>,
    component_error: f64,
    iterations: u64,
    converged: bool,
}

fn run_start(
    mut theta: Vec<f64>,
    target_mag: &[f64],
    target_mag2: &[f64],
    opts: &AnalyzeOptions,
    goal: f64,
) -> StartOutcome {
    let dim = theta.len() + 1;
    let mut residual = DVector::from_vec(magnitude_residuals(&theta, target_mag2));
    let mut cost = residual.norm_squared();
    let (c0, _) = forward(&theta);
    let mut best_err = component_error(&c0, target_mag, opts.zero_tol);
    if best_err <= goal {
        return StartOutcome {
            theta,
            component_error: best_err,
            iterations: 0,
            converged: true,
        };
    }

    let mut mu = 1e-3;
    let mut stagnant = 0u32;
    let mut iterations = 0u64;

    while iterations < opts.max_iterations {
        iterations += 1;
        let jac = magnitude_jacobian(&theta);
        let normal = jac.transpose() * &jac;
        let gradient = jac.transpose() * &residual;

        let mut accepted = false;
        for _ in 0..25 {
            let mut damped = normal.clone();
            for i in 0..dim - 1 {
                damped[(i, i)] += mu;
            }
            let step = match damped.cholesky() {
                Some(chol) => chol.solve(&(-&gradient)),
                None => {
                    mu *= 10.0;
                    continue;
                }
            };
            let trial: Vec<f64> = theta
                .iter()
                .zip(step.iter())
                .map(|(t, d)| t + d)
                .collect();
            let trial_residual = DVector::from_vec(magnitude_residuals(&trial, target_mag2));
            let trial_cost = trial_residual.norm_squared();
            if trial_cost < cost {
                let improvement = (cost - trial_cost) / cost.max(f64::MIN_POSITIVE);
                theta = trial;
                residual = trial_residual;
                cost = trial_cost;
                mu = (mu / 3.0).max(1e-14);
                stagnant = if improvement < 1e-14 { stagnant + 1 } else { 0 };
                accepted = true;
                break;
            }
            mu *= 4.0;
            if mu > 1e14 {
                break;
            }
        }

        if !accepted {
            break;
        }

        let (c, _) = forward(&theta);
        let err = component_error(&c, target_mag, opts.zero_tol);
        best_err = best_err.min(err);
        if err <= goal {
            return StartOutcome {
                theta,
                component_error: err,
                iterations,
                converged: true,
            };
        }
        if stagnant >= 8 {
            break;
        }
    }

    StartOutcome {
        theta,
        component_error: best_err,
        iterations,
        converged: false,
    }
}

/// Start point from alternating projections between the flat-spectrum
/// variety (the polar factor's image) and the target-magnitude torus.
///
/// Random restarts alone rarely land inside a solution basin once the
/// angle count grows; a few hundred projection rounds from seeded random
/// phases get close to a solution pair whenever one exists, and the
/// damped least-squares polish then converges in a handful of steps. The
/// principal-branch angle lift below is allowed to be incoherent by
/// multiples of 4π; that only relocates the start, not the basin
/// structure.
fn alternating_projection_start(target_mag: &[f64], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let dim = target_mag.len();
    let rounds = 120 + 2 * dim;
    let mut c: Vec<Complex64> = target_mag
        .iter()
        .map(|&m| {
            Complex64::from_polar(
                m.max(1e-12),
                rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
            )
        })
        .collect();
    let scale = 1.0 / dim as f64;
    for _ in 0..rounds {
        fwht_in_place(&mut c).expect("power-of-two length");
        for x in c.iter_mut() {
            let norm = x.norm();
            *x = if norm > 1e-300 {
                *x / norm
            } else {
                Complex64::new(1.0, 0.0)
            };
        }
        fwht_in_place(&mut c).expect("power-of-two length");
        for (x, &m) in c.iter_mut().zip(target_mag.iter()) {
            *x = Complex64::from_polar(m, (*x * scale).arg());
        }
    }
    // Lift the flat-spectrum projection back to angles.
    fwht_in_place(&mut c).expect("power-of-two length");
    let spectral_args: Vec<f64> = c.iter().map(|x| -2.0 * x.arg()).collect();
    let tilde = fwht_real(&spectral_args).expect("power-of-two length");
    tilde[1..].iter().map(|x| x * scale).collect()
}

/// Multi-start magnitude fit. Start 0 uses the arcsine heuristic
/// θ_ℓ = 2·asin(m_ℓ); later starts alternate between
/// alternating-projection seeds and plain uniform draws, all from the
/// seeded stream.
pub(crate) fn fit_magnitudes(target_mag: &[f64], opts: &AnalyzeOptions) -> FitResult {
    let dim = target_mag.len();
    let target_mag2: Vec<f64> = target_mag.iter().map(|m| m * m).collect();
    // Leave slack below the caller's tolerance so the final resynthesis
    // check cannot be lost to rounding.
    let goal = 0.5 * opts.tol;

    let heuristic: Vec<f64> = (1..dim)
        .map(|l| 2.0 * target_mag[l].clamp(0.0, 1.0).asin())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut total_iterations = 0u64;
    let mut restarts_used = 0u32;
    let mut best: Option<StartOutcome> = None;

    for attempt in 0..=opts.max_restarts {
        let start = if attempt == 0 {
            heuristic.clone()
        } else if attempt % 2 == 1 {
            alternating_projection_start(target_mag, &mut rng)
        } else {
            (1..dim)
                .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect()
        };
        let outcome = run_start(start, target_mag, &target_mag2, opts, goal);
        total_iterations += outcome.iterations;
        restarts_used = attempt;
        let converged = outcome.converged;
        let better = best
            .as_ref()
            .map(|b| outcome.component_error < b.component_error)
            .unwrap_or(true);
        if better {
            best = Some(outcome);
        }
        if converged {
            break;
        }
    }

    let best = best.expect("at least one start always runs");
    FitResult {
        theta: best.theta,
        iterations: total_iterations,
        restarts: restarts_used,
    }
}
