//! The operator families of the group-algebra construction.
//!
//! All families share one index convention: the bits of ℓ (least
//! significant bit = rightmost tensor slot) select which tensor factors
//! carry a non-identity Pauli.
//!
//! - `b_operator(l, n)`: tensor products of σ₁; the XOR permutation
//!   matrices. They commute, square to the identity, and multiply by
//!   index XOR, so they form an abelian group isomorphic to (Z₂)^n.
//! - `z_operator(l, n)`: the σ₃ counterparts; diagonal involutions whose
//!   entries are the Walsh characters `parity_sign(l, k)`.
//! - `reference_projector(n)`: the rank-one idempotent selecting the
//!   reference state, equal to (1/N)·Σ_ℓ z(ℓ) = diag(1, 0, …, 0).
//! - `clifford_generator(m, n)`: e_m = b(2^{m−1})·z(2^{m−1}−1), a family
//!   of anticommuting hermitian involutions generating Cl_n.
//!
//! `b_operator` is built directly as an XOR permutation rather than by
//! repeated Kronecker products; the `kron` path stays available as a
//! cross-check.

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::walsh::{fwht, parity_sign};
use crate::Complex64;

fn check_index(index: usize, limit: usize) -> Result<()> {
    if index >= limit {
        Err(Error::IndexOutOfRange { index, limit })
    } else {
        Ok(())
    }
}

/// Pauli matrix σ_μ for μ ∈ {0, 1, 2, 3}; σ₀ is the identity.
pub fn pauli(mu: usize) -> Result<OperatorMatrix> {
    check_index(mu, 4)?;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let rows = match mu {
        0 => [[one, zero], [zero, one]],
        1 => [[zero, one], [one, zero]],
        2 => [[zero, -i], [i, zero]],
        _ => [[one, zero], [zero, -one]],
    };
    OperatorMatrix::from_fn(1, true, true, |r, c| rows[r][c])
}

/// b(ℓ) on n qubits: entry (j, k) = 1 iff j = k⊕ℓ.
pub fn b_operator(l: usize, n: usize) -> Result<OperatorMatrix> {
    check_index(l, 1 << n)?;
    OperatorMatrix::from_fn(n, true, true, |r, c| {
        if r == (c ^ l) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// b(ℓ) assembled from Kronecker factors σ₁^{λ_j}; cross-check path for
/// [`b_operator`].
pub fn b_operator_kron(l: usize, n: usize) -> Result<OperatorMatrix> {
    check_index(l, 1 << n)?;
    let mut acc = pauli(if (l >> (n - 1)) & 1 == 1 { 1 } else { 0 })?;
    for slot in (0..n - 1).rev() {
        let factor = pauli(if (l >> slot) & 1 == 1 { 1 } else { 0 })?;
        acc = acc.kron(&factor)?;
    }
    Ok(acc)
}

/// z(ℓ) on n qubits: diagonal with entries `parity_sign(l, k)`.
pub fn z_operator(l: usize, n: usize) -> Result<OperatorMatrix> {
    check_index(l, 1 << n)?;
    OperatorMatrix::from_fn(n, true, true, |r, c| {
        if r == c {
            Complex64::new(parity_sign(l, r) as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Rank-one reference projector diag(1, 0, …, 0) = (1/N)·Σ_ℓ z(ℓ).
pub fn reference_projector(n: usize) -> Result<OperatorMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    OperatorMatrix::from_fn(n, true, false, |r, c| {
        if r == 0 && c == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Clifford generator e_m = b(2^{m−1})·z(2^{m−1}−1), m ∈ [1, n].
///
/// The generators are hermitian, anticommute pairwise, and square to the
/// identity.
pub fn clifford_generator(m: usize, n: usize) -> Result<OperatorMatrix> {
    if m == 0 || m > n {
        return Err(Error::IndexOutOfRange {
            index: m,
            limit: n + 1,
        });
    }
    let flip = 1usize << (m - 1);
    let mask = flip - 1;
    // Entry (j, k): b(flip) moves k → k⊕flip, z(mask) contributes the
    // character at k.
    OperatorMatrix::from_fn(n, true, true, |r, c| {
        if r == (c ^ flip) {
            Complex64::new(parity_sign(mask, c) as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// A choice of group-algebra basis B(ℓ) = phase(ℓ)·b(ℓ)·z(L_ℓ).
///
/// Every choice spans the same states, since z(L_ℓ) acts as the identity
/// on the reference state, but the operator sets differ and so do the
/// coefficient combinations that become singular.
#[derive(Debug, Clone)]
pub struct BasisChoice {
    n: usize,
    phases: Vec<Complex64>,
    z_map: Vec<usize>,
}

impl BasisChoice {
    /// The plain basis B(ℓ) = b(ℓ).
    pub fn plain(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        Ok(Self {
            n,
            phases: vec![Complex64::new(1.0, 0.0); dim],
            z_map: vec![0; dim],
        })
    }

    /// The Clifford basis: B(ℓ) is the product of generators e_m over the
    /// set bits of ℓ, taken in decreasing m order.
    ///
    /// Normal-ordering the product into b(ℓ)·z(L_ℓ) form crosses each
    /// lower-index flip past every higher-index character, which
    /// contributes one sign per crossing: (−1)^{r(r−1)/2} for r set bits.
    pub fn clifford(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        let mut phases = Vec::with_capacity(dim);
        let mut z_map = Vec::with_capacity(dim);
        for l in 0..dim {
            let r = l.count_ones() as usize;
            let sign = if (r * (r.saturating_sub(1)) / 2) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            phases.push(Complex64::new(sign, 0.0));
            let mut mask = 0usize;
            for m in 1..=n {
                if (l >> (m - 1)) & 1 == 1 {
                    mask ^= (1usize << (m - 1)) - 1;
                }
            }
            z_map.push(mask);
        }
        Ok(Self { n, phases, z_map })
    }

    /// The two-qubit basis {1, i·e₁, i·e₂, e₁e₂} whose non-identity
    /// elements are antihermitian: phases (1, i, i, 1) with
    /// z-map (0, 0, 1, 1).
    pub fn cl2_antihermitian() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        Self {
            n: 2,
            phases: vec![one, i, i, one],
            z_map: vec![0, 0, 1, 1],
        }
    }

    /// User-supplied phases and z-map; phases must be unimodular.
    pub fn custom(n: usize, phases: Vec<Complex64>, z_map: Vec<usize>) -> Result<Self> {
        let dim = 1usize << n;
        if phases.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: phases.len(),
            });
        }
        if z_map.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: z_map.len(),
            });
        }
        for (l, p) in phases.iter().enumerate() {
            if (p.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "phase for index {l} has modulus {}",
                    p.norm()
                )));
            }
        }
        for &m in &z_map {
            check_index(m, dim)?;
        }
        Ok(Self { n, phases, z_map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phase(&self, l: usize) -> Complex64 {
        self.phases[l]
    }

    pub fn z_index(&self, l: usize) -> usize {
        self.z_map[l]
    }

    /// The basis element B(ℓ) as a dense matrix.
    pub fn element(&self, l: usize) -> Result<OperatorMatrix> {
        check_index(l, 1 << self.n)?;
        let phase = self.phases[l];
        let mask = self.z_map[l];
        OperatorMatrix::from_fn(self.n, false, false, |r, c| {
            if r == (c ^ l) {
                phase * parity_sign(mask, c) as f64
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }
}

/// The group-algebra element Σ_ℓ c_ℓ·B(ℓ).
///
/// For the plain basis the first column equals the coefficient vector
/// itself, which is how a state is read off its left-factor matrix.
pub fn group_element(coeffs: &[Complex64], basis: &BasisChoice) -> Result<OperatorMatrix> {
    let dim = 1usize << basis.n();
    if coeffs.len() != dim {
        return Err(Error::LengthMismatch {
            expected: dim,
            actual: coeffs.len(),
        });
    }
    // Entry (j, k) collects the single basis element with j = k⊕ℓ.
    OperatorMatrix::from_fn(basis.n(), false, false, |r, c| {
        let l = r ^ c;
        coeffs[l] * basis.phases[l] * parity_sign(basis.z_map[l], c) as f64
    })
}

/// Walsh spectrum of a coefficient vector together with its singularity
/// verdict.
#[derive(Debug, Clone)]
pub struct SpectrumAnalysis {
    /// Unnormalized Walsh image of the coefficients; the eigenvalues of
    /// the plain-basis group element.
    pub spectrum: Vec<Complex64>,
    /// True when some spectral magnitude is below `REL_SINGULAR_TOL`
    /// times the largest one.
    pub singular: bool,
}

/// Relative threshold for declaring a Walsh spectrum singular.
pub const REL_SINGULAR_TOL: f64 = 1e-12;

/// Diagonalizes the plain-basis group element via the Walsh transform and
/// flags vanishing spectral values.
///
/// For the plain basis, a zero in the spectrum is exactly a vanishing
/// determinant of Σ c_ℓ b(ℓ): the Bell combinations are the classic case.
pub fn walsh_spectrum(coeffs: &[Complex64]) -> Result<SpectrumAnalysis> {
    let spectrum = fwht(coeffs)?;
    let max = spectrum.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::DegenerateInput(
            "all coefficients are zero".to_string(),
        ));
    }
    let min = spectrum
        .iter()
        .map(|x| x.norm())
        .fold(f64::INFINITY, f64::min);
    Ok(SpectrumAnalysis {
        singular: min < REL_SINGULAR_TOL * max,
        spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_coeffs(rng: &mut ChaCha8Rng, len: usize, normalize: bool) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = (0..len)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if normalize {
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for x in &mut v {
                *x /= norm;
            }
        }
        v
    }

    #[test]
    fn pauli_products_and_projector() {
        let s1 = pauli(1).unwrap();
        let s2 = pauli(2).unwrap();
        let s3 = pauli(3).unwrap();
        let id = OperatorMatrix::identity(1).unwrap();

        // σ₁² = 1
        assert!(s1.mul(&s1).unwrap().frobenius_distance(&id) < 1e-15);
        // σ₁σ₂σ₃ = i·1
        let vol = s1.mul(&s2).unwrap().mul(&s3).unwrap();
        assert!(vol.frobenius_distance(&id.scale(c(0.0, 1.0))) < 1e-15);
        // P₃ = (1 + σ₃)/2 = diag(1, 0)
        let p3 = id.add(&s3).unwrap().scale(c(0.5, 0.0));
        assert!(p3.frobenius_distance(&reference_projector(1).unwrap()) < 1e-15);
        assert!(pauli(4).is_err());
    }

    #[test]
    fn printed_two_qubit_b_family() {
        let b1 = b_operator(1, 2).unwrap();
        let b2 = b_operator(2, 2).unwrap();
        let b3 = b_operator(3, 2).unwrap();
        let expect = |m: &OperatorMatrix, rows: [[f64; 4]; 4]| {
            for r in 0..4 {
                for col in 0..4 {
                    assert_eq!(m.get(r, col), c(rows[r][col], 0.0));
                }
            }
        };
        expect(
            &b1,
            [
                [0., 1., 0., 0.],
                [1., 0., 0., 0.],
                [0., 0., 0., 1.],
                [0., 0., 1., 0.],
            ],
        );
        expect(
            &b2,
            [
                [0., 0., 1., 0.],
                [0., 0., 0., 1.],
                [1., 0., 0., 0.],
                [0., 1., 0., 0.],
            ],
        );
        expect(
            &b3,
            [
                [0., 0., 0., 1.],
                [0., 0., 1., 0.],
                [0., 1., 0., 0.],
                [1., 0., 0., 0.],
            ],
        );
        // b(0) = 1 and b(3) = σ₁⊗σ₁ via the Kronecker route.
        assert!(
            b_operator(0, 2)
                .unwrap()
                .frobenius_distance(&OperatorMatrix::identity(2).unwrap())
                < 1e-15
        );
        let s1 = pauli(1).unwrap();
        assert!(s1.kron(&s1).unwrap().frobenius_distance(&b3) < 1e-15);
    }

    #[test]
    fn xor_and_kron_routes_agree() {
        for n in 1..=3usize {
            for l in 0..(1usize << n) {
                let direct = b_operator(l, n).unwrap();
                let kron = b_operator_kron(l, n).unwrap();
                assert!(direct.frobenius_distance(&kron) < 1e-15, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn b_family_is_xor_group() {
        let n = 3;
        for l in 0..8usize {
            for m in 0..8usize {
                let prod = b_operator(l, n)
                    .unwrap()
                    .mul(&b_operator(m, n).unwrap())
                    .unwrap();
                let expected = b_operator(l ^ m, n).unwrap();
                assert!(prod.frobenius_distance(&expected) < 1e-15);
            }
        }
    }

    #[test]
    fn z_family_diagonal_and_projector_sum() {
        let n = 2;
        // z(0) = 1.
        assert!(
            z_operator(0, n)
                .unwrap()
                .frobenius_distance(&OperatorMatrix::identity(n).unwrap())
                < 1e-15
        );
        // (1/4)·Σ_ℓ z(ℓ) = diag(1, 0, 0, 0).
        let mut sum = z_operator(0, n).unwrap();
        for l in 1..4 {
            sum = sum.add(&z_operator(l, n).unwrap()).unwrap();
        }
        let p = sum.scale(c(0.25, 0.0));
        assert!(p.frobenius_distance(&reference_projector(n).unwrap()) < 1e-15);
    }

    #[test]
    fn z_and_b_commute_up_to_parity() {
        let n = 3;
        for l in 0..8usize {
            for m in 0..8usize {
                let z = z_operator(l, n).unwrap();
                let b = b_operator(m, n).unwrap();
                let lhs = z.mul(&b).unwrap();
                let rhs = b.mul(&z).unwrap().scale(c(parity_sign(l, m) as f64, 0.0));
                assert!(lhs.frobenius_distance(&rhs) < 1e-15, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn projector_properties() {
        for n in 1..=5usize {
            let p = reference_projector(n).unwrap();
            assert!(p.mul(&p).unwrap().frobenius_distance(&p) < 1e-15);
            assert!((p.trace() - c(1.0, 0.0)).norm() < 1e-15);
            for l in 0..(1usize << n) {
                let zp = z_operator(l, n).unwrap().mul(&p).unwrap();
                assert!(zp.frobenius_distance(&p) < 1e-15);
            }
        }
    }

    #[test]
    fn clifford_generators_match_tensor_forms() {
        // e₁ = 1⊗σ₁ and e₂ = σ₁⊗σ₃ at n = 2.
        let id = pauli(0).unwrap();
        let s1 = pauli(1).unwrap();
        let s3 = pauli(3).unwrap();
        let e1 = clifford_generator(1, 2).unwrap();
        let e2 = clifford_generator(2, 2).unwrap();
        assert!(id.kron(&s1).unwrap().frobenius_distance(&e1) < 1e-15);
        assert!(s1.kron(&s3).unwrap().frobenius_distance(&e2) < 1e-15);
        assert!(clifford_generator(0, 2).is_err());
        assert!(clifford_generator(3, 2).is_err());
    }

    #[test]
    fn clifford_generators_anticommute() {
        for n in 1..=3usize {
            let id = OperatorMatrix::identity(n).unwrap();
            for j in 1..=n {
                for k in 1..=n {
                    let ej = clifford_generator(j, n).unwrap();
                    let ek = clifford_generator(k, n).unwrap();
                    let anti = ej.mul(&ek).unwrap().add(&ek.mul(&ej).unwrap()).unwrap();
                    let expected = if j == k {
                        id.scale(c(2.0, 0.0))
                    } else {
                        id.scale(c(0.0, 0.0))
                    };
                    assert!(anti.frobenius_distance(&expected) < 1e-15, "j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn clifford_basis_elements_equal_generator_products() {
        for n in 1..=3usize {
            let basis = BasisChoice::clifford(n).unwrap();
            for l in 0..(1usize << n) {
                let mut product = OperatorMatrix::identity(n).unwrap();
                for m in (1..=n).rev() {
                    if (l >> (m - 1)) & 1 == 1 {
                        product = product.mul(&clifford_generator(m, n).unwrap()).unwrap();
                    }
                }
                let element = basis.element(l).unwrap();
                assert!(product.frobenius_distance(&element) < 1e-15, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn plain_group_element_first_column_and_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let coeffs = random_coeffs(&mut rng, 4, false);
        let basis = BasisChoice::plain(2).unwrap();
        let m = group_element(&coeffs, &basis).unwrap();
        // Entry (j, k) = c_{j⊕k}; first column is the coefficient vector.
        for r in 0..4 {
            for col in 0..4 {
                assert_eq!(m.get(r, col), coeffs[r ^ col]);
            }
        }
        assert_eq!(m.column(0), coeffs);
    }

    #[test]
    fn unit_coefficients_give_identity() {
        let mut coeffs = vec![c(0.0, 0.0); 8];
        coeffs[0] = c(1.0, 0.0);
        let basis = BasisChoice::plain(3).unwrap();
        let m = group_element(&coeffs, &basis).unwrap();
        assert!(m.frobenius_distance(&OperatorMatrix::identity(3).unwrap()) < 1e-15);
    }

    #[test]
    fn printed_antihermitian_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cs = random_coeffs(&mut rng, 4, false);
        let m = group_element(&cs, &BasisChoice::cl2_antihermitian()).unwrap();
        let i = c(0.0, 1.0);
        let expected = [
            [cs[0], i * cs[1], i * cs[2], -cs[3]],
            [i * cs[1], cs[0], cs[3], -i * cs[2]],
            [i * cs[2], -cs[3], cs[0], i * cs[1]],
            [cs[3], -i * cs[2], i * cs[1], cs[0]],
        ];
        for r in 0..4 {
            for col in 0..4 {
                assert!(
                    (m.get(r, col) - expected[r][col]).norm() < 1e-15,
                    "({r},{col})"
                );
            }
        }
        // Non-identity elements are antihermitian.
        let basis = BasisChoice::cl2_antihermitian();
        for l in 1..4 {
            let e = basis.element(l).unwrap();
            let sum = e.add(&e.adjoint()).unwrap();
            let zero = OperatorMatrix::identity(2).unwrap().scale(c(0.0, 0.0));
            assert!(sum.frobenius_distance(&zero) < 1e-15);
        }
    }

    #[test]
    fn antihermitian_basis_resolves_bell_singularity() {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let cs = [
            c(inv_sqrt2, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(inv_sqrt2, 0.0),
        ];
        // Singular in the plain basis...
        let plain = group_element(&cs, &BasisChoice::plain(2).unwrap()).unwrap();
        assert!(plain.determinant().norm() < 1e-12);
        assert!(walsh_spectrum(&cs).unwrap().singular);
        // ...but unitary in the antihermitian one.
        let m = group_element(&cs, &BasisChoice::cl2_antihermitian()).unwrap();
        assert!(m.unitarity_error() < 1e-12);
    }

    #[test]
    fn spectrum_flag_matches_dense_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for trial in 0..200 {
            let n = 2 + trial % 3;
            let cs = random_coeffs(&mut rng, 1 << n, true);
            let analysis = walsh_spectrum(&cs).unwrap();
            let det = group_element(&cs, &BasisChoice::plain(n).unwrap())
                .unwrap()
                .determinant();
            assert_eq!(analysis.singular, det.norm() < 1e-10, "trial {trial}");
        }
    }

    #[test]
    fn spectrum_of_reference_state() {
        let mut cs = vec![c(0.0, 0.0); 8];
        cs[0] = c(1.0, 0.0);
        let analysis = walsh_spectrum(&cs).unwrap();
        assert!(!analysis.singular);
        for x in analysis.spectrum {
            assert!((x - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_spectrum_rejected() {
        let cs = vec![c(0.0, 0.0); 4];
        assert!(matches!(walsh_spectrum(&cs), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn group_element_determinant_is_spectrum_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 1..=4usize {
            let cs = random_coeffs(&mut rng, 1 << n, true);
            let det = group_element(&cs, &BasisChoice::plain(n).unwrap())
                .unwrap()
                .determinant();
            let product = fwht(&cs)
                .unwrap()
                .into_iter()
                .fold(c(1.0, 0.0), |acc, x| acc * x);
            assert!(
                (det - product).norm() / product.norm().max(1e-300) < 1e-8,
                "n={n}"
            );
        }
    }

    #[test]
    fn spectral_identity_for_b() {
        // b(ℓ) = (1/N)·W·diag(parity)·W with W the Walsh matrix.
        for n in 1..=4usize {
            let dim = 1usize << n;
            let w = OperatorMatrix::from_fn(n, true, false, |r, col| {
                c(parity_sign(r, col) as f64, 0.0)
            })
            .unwrap();
            for l in 0..dim {
                let d = OperatorMatrix::from_fn(n, true, false, |r, col| {
                    if r == col {
                        c(parity_sign(l, r) as f64, 0.0)
                    } else {
                        c(0.0, 0.0)
                    }
                })
                .unwrap();
                let spectral = w
                    .mul(&d)
                    .unwrap()
                    .mul(&w)
                    .unwrap()
                    .scale(c(1.0 / dim as f64, 0.0));
                assert!(
                    spectral.frobenius_distance(&b_operator(l, n).unwrap()) < 1e-12,
                    "n={n} l={l}"
                );
            }
        }
    }
}
