//! Parity signs and the fast Walsh-Hadamard transform.
//!
//! Index bits follow one fixed convention everywhere: bit j of ℓ (with
//! bit 1 the least significant) selects the j-th tensor slot, counted
//! from the right. Under that convention the diagonal entry k of z(ℓ) is
//! `parity_sign(l, k)` and the transform below simultaneously
//! diagonalizes the whole b(ℓ) and z(ℓ) families.
//!
//! The transform is unnormalized: applying it twice yields N·v, and any
//! 1/N factors appear explicitly at call sites.

use crate::error::{Error, Result};
use crate::Complex64;

/// Walsh character value (−1)^popcount(l AND k), symmetric in its
/// arguments.
#[inline]
pub fn parity_sign(l: usize, k: usize) -> i32 {
    if (l & k).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_power_of_two(len: usize) -> Result<()> {
    if len == 0 || !len.is_power_of_two() {
        Err(Error::NotPowerOfTwo(len))
    } else {
        Ok(())
    }
}

/// In-place unnormalized Walsh-Hadamard transform.
///
/// Iterative butterfly with power-of-two strides; O(N log N).
pub fn fwht_in_place(v: &mut [Complex64]) -> Result<()> {
    check_power_of_two(v.len())?;
    let mut h = 1;
    while h < v.len() {
        for chunk in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let x = *a;
                let y = *b;
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    Ok(())
}

/// Unnormalized Walsh-Hadamard transform, X_k = Σ_ℓ parity_sign(ℓ,k)·v_ℓ.
pub fn fwht(v: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = v.to_vec();
    fwht_in_place(&mut out)?;
    Ok(out)
}

/// Real-input variant of [`fwht`]; the transform of a real vector is real.
pub fn fwht_real(v: &[f64]) -> Result<Vec<f64>> {
    check_power_of_two(v.len())?;
    let mut out = v.to_vec();
    let mut h = 1;
    while h < out.len() {
        for chunk in out.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let x = *a;
                let y = *b;
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    Ok(out)
}

/// Quadratic reference transform, identical contract to [`fwht`].
///
/// Evaluates the double sum directly; kept as an independent oracle for
/// the butterfly kernel.
pub fn fwht_naive(v: &[Complex64]) -> Result<Vec<Complex64>> {
    check_power_of_two(v.len())?;
    let n = v.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, &value) in v.iter().enumerate() {
            if parity_sign(l, k) > 0 {
                acc += value;
            } else {
                acc -= value;
            }
        }
        *slot = acc;
    }
    Ok(out)
}
