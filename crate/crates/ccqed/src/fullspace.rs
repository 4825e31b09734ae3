//! Independent brute-force validation route: the Hamiltonian on the full
//! 36-dimensional product space, assembled from per-factor ladder matrices
//! via Kronecker products rather than by walking sector configurations.
//!
//! This exists to catch indexing and partial-trace mistakes, not for
//! performance; sweeps never touch it. Within a fixed-N eigenspace the
//! photon cutoff at N is exact, so the sector-2 block is identical whether
//! the per-site cutoff is 2 or higher, which is also checked here.

use crate::error::{Error, Result};
use crate::hilbert::{enumerate_basis, full_space_index};
use crate::linalg::{jacobi_eigen, Matrix};
use crate::model::ModelParams;
use crate::spectra::{self, GroundStateResult};

/// Photon annihilation operator truncated at `cutoff` photons:
/// a|n⟩ = √n |n−1⟩.
fn annihilation(cutoff: u8) -> Matrix {
    let dim = cutoff as usize + 1;
    let mut a = Matrix::zeros(dim);
    for n in 1..dim {
        a[(n - 1, n)] = (n as f64).sqrt();
    }
    a
}

fn transpose(m: &Matrix) -> Matrix {
    let n = m.dim();
    let mut t = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            t[(i, j)] = m[(j, i)];
        }
    }
    t
}

fn add_scaled(acc: &mut Matrix, m: &Matrix, scale: f64) {
    let n = acc.dim();
    for i in 0..n {
        for j in 0..n {
            acc[(i, j)] += scale * m[(i, j)];
        }
    }
}

/// Four-factor Kronecker product in the global order (A1, C1, A2, C2).
fn kron4(a1: &Matrix, c1: &Matrix, a2: &Matrix, c2: &Matrix) -> Matrix {
    a1.kron(c1).kron(a2).kron(c2)
}

/// Full-space Hamiltonian with per-site photon cutoff `cutoff`
/// (dimension 4(cutoff+1)²).
pub fn build_full_with_cutoff(params: &ModelParams, cutoff: u8) -> Matrix {
    let a = annihilation(cutoff);
    let adag = transpose(&a);
    let n_photon = {
        let mut m = Matrix::zeros(cutoff as usize + 1);
        for n in 0..=cutoff as usize {
            m[(n, n)] = n as f64;
        }
        m
    };
    let id_c = Matrix::identity(cutoff as usize + 1);
    let id_a = Matrix::identity(2);
    // atom basis order (g, e)
    let n_atom = {
        let mut m = Matrix::zeros(2);
        m[(1, 1)] = 1.0;
        m
    };
    let sigma_minus = {
        // |g⟩⟨e|
        let mut m = Matrix::zeros(2);
        m[(0, 1)] = 1.0;
        m
    };
    let sigma_plus = transpose(&sigma_minus);

    let dim = 4 * (cutoff as usize + 1) * (cutoff as usize + 1);
    let mut h = Matrix::zeros(dim);
    // cavity and atom energies
    add_scaled(
        &mut h,
        &kron4(&id_a, &n_photon, &id_a, &id_c),
        params.omega_c,
    );
    add_scaled(
        &mut h,
        &kron4(&id_a, &id_c, &id_a, &n_photon),
        params.omega_c,
    );
    add_scaled(&mut h, &kron4(&n_atom, &id_c, &id_a, &id_c), params.omega_a);
    add_scaled(&mut h, &kron4(&id_a, &id_c, &n_atom, &id_c), params.omega_a);
    // g(a†σ⁻ + aσ⁺) at each site
    add_scaled(&mut h, &kron4(&sigma_minus, &adag, &id_a, &id_c), params.g);
    add_scaled(&mut h, &kron4(&sigma_plus, &a, &id_a, &id_c), params.g);
    add_scaled(&mut h, &kron4(&id_a, &id_c, &sigma_minus, &adag), params.g);
    add_scaled(&mut h, &kron4(&id_a, &id_c, &sigma_plus, &a), params.g);
    // A(a₁†a₂ + a₂†a₁)
    add_scaled(&mut h, &kron4(&id_a, &adag, &id_a, &a), params.hop);
    add_scaled(&mut h, &kron4(&id_a, &a, &id_a, &adag), params.hop);
    h
}

/// Full-space Hamiltonian at the sector-2 cutoff (36×36).
pub fn build_full(params: &ModelParams) -> Matrix {
    build_full_with_cutoff(params, 2)
}

/// Diagonal of the total excitation number N̂ in the full space.
pub fn number_diagonal(cutoff: u8) -> Vec<f64> {
    let c = cutoff as usize + 1;
    let dim = 4 * c * c;
    (0..dim)
        .map(|idx| {
            let c2 = idx % c;
            let a2 = (idx / c) % 2;
            let c1 = (idx / (2 * c)) % c;
            let a1 = idx / (2 * c * c);
            (a1 + c1 + a2 + c2) as f64
        })
        .collect()
}

/// Largest entry of |[H, N̂]| on the full space. Conservation is structural,
/// so this is zero to machine precision for any parameters.
pub fn number_commutator_max(params: &ModelParams) -> f64 {
    let h = build_full(params);
    let n = number_diagonal(2);
    let dim = h.dim();
    let mut max = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            // [H, N]_ij = H_ij (N_j − N_i) for diagonal N
            max = max.max((h[(i, j)] * (n[j] - n[i])).abs());
        }
    }
    max
}

/// Eigenvalues of the sector-2 block of the full-space Hamiltonian at an
/// arbitrary photon cutoff ≥ 2, for the cutoff-independence check.
pub fn sector_block_eigenvalues(params: &ModelParams, cutoff: u8) -> Result<Vec<f64>> {
    assert!(cutoff >= 2);
    let h = build_full_with_cutoff(params, cutoff);
    let basis = enumerate_basis(2);
    let idx: Vec<usize> = basis
        .configs()
        .iter()
        .map(|cfg| full_space_index(cfg, cutoff))
        .collect::<Result<_>>()?;
    let mut block = Matrix::zeros(idx.len());
    for (bi, &i) in idx.iter().enumerate() {
        for (bj, &j) in idx.iter().enumerate() {
            block[(bi, bj)] = h[(i, j)];
        }
    }
    Ok(jacobi_eigen(&block)?.values)
}

/// Ground state of the two-excitation sector obtained the long way: full
/// 36×36 diagonalization, then selection of the lowest eigenvector lying in
/// the N = 2 eigenspace of N̂.
pub fn sector_ground_via_fullspace(params: &ModelParams) -> Result<GroundStateResult> {
    let h = build_full(params);
    let eig = jacobi_eigen(&h)?;
    let number = number_diagonal(2);
    let basis = enumerate_basis(2);
    let sector_indices: Vec<usize> = (0..basis.len()).map(|k| basis.full_index(k)).collect();

    let mut found: Option<(f64, Vec<f64>)> = None;
    let mut next_energy: Option<f64> = None;
    for k in 0..eig.values.len() {
        let v = eig.eigenvector(k);
        let outside: f64 = v
            .iter()
            .enumerate()
            .filter(|(i, _)| number[*i] != 2.0)
            .map(|(_, x)| x * x)
            .sum::<f64>()
            .sqrt();
        if outside < 1e-10 {
            if found.is_none() {
                found = Some((eig.values[k], v));
            } else {
                next_energy = Some(eig.values[k]);
                break;
            }
        }
    }
    let (energy, full_vector) =
        found.ok_or_else(|| Error::Integrity("no N = 2 eigenvector found".into()))?;

    let mut amplitudes: Vec<f64> = sector_indices.iter().map(|&i| full_vector[i]).collect();
    spectra::fix_sign(&mut amplitudes);
    let gap = next_energy.map_or(f64::INFINITY, |e| e - energy);
    Ok(GroundStateResult {
        energy,
        vector: crate::hilbert::StateVector::normalized(basis, amplitudes)?,
        gap,
        degenerate: gap < spectra::DEGENERACY_RTOL * energy.abs().max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::enumerate_basis;
    use crate::model::build_hamiltonian;
    use crate::spectra::ground_state;
    use approx::assert_abs_diff_eq;

    fn params(delta: f64, hop: f64) -> ModelParams {
        ModelParams::from_reduced(delta, hop, 1.0, 0.0).unwrap()
    }

    #[test]
    fn vacuum_energy_is_zero() {
        let h = build_full(&params(2.7, 1.3));
        assert_eq!(h[(0, 0)], 0.0);
    }

    #[test]
    fn sector_restriction_matches_direct_build() {
        let basis = enumerate_basis(2);
        for &(delta, hop) in &[(0.0, 0.0), (-3.2, 0.7), (11.0, 4.5)] {
            let p = params(delta, hop);
            let full = build_full(&p);
            let sector = build_hamiltonian(&p, &basis);
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    let fi = basis.full_index(i);
                    let fj = basis.full_index(j);
                    assert_abs_diff_eq!(full[(fi, fj)], sector.matrix[(i, j)], epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn number_operator_commutes() {
        assert!(number_commutator_max(&params(0.0, 0.0)) < 1e-12);
        assert!(number_commutator_max(&params(-17.0, 9.0)) < 1e-12);
        // conservation is structural, not a scale effect
        let tiny = ModelParams::new(0.0, 1e-9 * -3.0, 1e-9, 1e-9 * 0.5).unwrap();
        assert!(number_commutator_max(&tiny) < 1e-12);
    }

    #[test]
    fn fullspace_ground_matches_sector_route() {
        let basis = enumerate_basis(2);
        for &(delta, hop) in &[(0.0, 0.01), (-10.0, 10.0), (5.0, 0.3), (-20.0, 1.0)] {
            let p = params(delta, hop);
            let via_full = sector_ground_via_fullspace(&p).unwrap();
            let direct = ground_state(&build_hamiltonian(&p, &basis)).unwrap();
            let overlap = via_full.vector.inner(&direct.vector).abs();
            assert!(
                overlap >= 1.0 - 1e-10,
                "({delta}, {hop}): overlap {overlap}"
            );
            assert_abs_diff_eq!(via_full.energy, direct.energy, epsilon = 1e-10);
        }
    }

    #[test]
    fn resonant_zero_hopping_ground_energy() {
        let gs = sector_ground_via_fullspace(&params(0.0, 0.0)).unwrap();
        // 2E₁⁻ = 2(ω_c − g) with ω_c = 0
        assert_abs_diff_eq!(gs.energy, -2.0, epsilon = 1e-12);
    }

    #[test]
    fn atomic_limit_energy_with_perturbative_correction() {
        let p = params(-50.0, 0.01);
        let gs = sector_ground_via_fullspace(&p).unwrap();
        // E ≈ 2ω_a − 2g²/|Δ| at second order
        assert_abs_diff_eq!(gs.energy, 2.0 * p.omega_a - 2.0 / 50.0, epsilon = 2e-3);
    }

    #[test]
    fn sector_block_is_cutoff_independent() {
        for &(delta, hop) in &[(0.0, 0.5), (-7.0, 3.0)] {
            let p = params(delta, hop);
            let at2 = sector_block_eigenvalues(&p, 2).unwrap();
            let at3 = sector_block_eigenvalues(&p, 3).unwrap();
            for (a, b) in at2.iter().zip(&at3) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            /// The kron-assembled full operator restricts to the
            /// config-walk sector matrix for arbitrary parameters.
            #[test]
            fn restriction_matches_everywhere(
                delta in -30.0f64..30.0,
                hop in -15.0f64..15.0,
                omega_c in -5.0f64..5.0,
            ) {
                let p = ModelParams::from_reduced(delta, hop, 1.0, omega_c).unwrap();
                let basis = enumerate_basis(2);
                let full = build_full(&p);
                let sector = build_hamiltonian(&p, &basis);
                for i in 0..basis.len() {
                    for j in 0..basis.len() {
                        let diff = (full[(basis.full_index(i), basis.full_index(j))]
                            - sector.matrix[(i, j)])
                        .abs();
                        prop_assert!(diff <= 1e-14);
                    }
                }
                prop_assert!(number_commutator_max(&p) < 1e-12);
            }
        }
    }
}
