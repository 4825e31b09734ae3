//! Spectral layer over the Jacobi eigensolver: full decompositions of sector
//! Hamiltonians and the ground state with a fixed sign convention.

use crate::error::Result;
use crate::hilbert::StateVector;
use crate::linalg::{self, EigenDecomposition};
use crate::model::HamiltonianMatrix;

/// Relative tolerance below which the first excited state is reported as
/// degenerate with the ground state.
pub const DEGENERACY_RTOL: f64 = 1e-9;

/// Lowest eigenpair of a sector Hamiltonian.
///
/// Sign convention: the amplitude of largest magnitude is positive (first such
/// index on ties), which makes the vector deterministic and comparable across
/// parameter points.
#[derive(Debug, Clone)]
pub struct GroundStateResult {
    pub energy: f64,
    pub vector: StateVector,
    /// λ₁ − λ₀, or +∞ for a one-dimensional sector.
    pub gap: f64,
    pub degenerate: bool,
}

/// Full eigendecomposition of the sector Hamiltonian.
pub fn diagonalize(h: &HamiltonianMatrix) -> Result<EigenDecomposition> {
    linalg::jacobi_eigen(&h.matrix)
}

/// Ground state of the sector Hamiltonian.
pub fn ground_state(h: &HamiltonianMatrix) -> Result<GroundStateResult> {
    let eig = diagonalize(h)?;
    ground_from_decomposition(h, &eig)
}

/// Extract the lowest eigenpair from an existing decomposition.
pub fn ground_from_decomposition(
    h: &HamiltonianMatrix,
    eig: &EigenDecomposition,
) -> Result<GroundStateResult> {
    let energy = eig.values[0];
    let mut amplitudes = eig.eigenvector(0);
    fix_sign(&mut amplitudes);
    let gap = if eig.values.len() > 1 {
        eig.values[1] - energy
    } else {
        f64::INFINITY
    };
    let degenerate = gap < DEGENERACY_RTOL * energy.abs().max(1.0);
    Ok(GroundStateResult {
        energy,
        vector: StateVector::new(h.basis.clone(), amplitudes)?,
        gap,
        degenerate,
    })
}

/// Flip the overall sign so the largest-magnitude amplitude is positive.
pub fn fix_sign(amplitudes: &mut [f64]) {
    let mut k = 0;
    for (i, a) in amplitudes.iter().enumerate() {
        if a.abs() > amplitudes[k].abs() {
            k = i;
        }
    }
    if amplitudes[k] < 0.0 {
        for a in amplitudes.iter_mut() {
            *a = -*a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dressed::{dressed_energy, Branch};
    use crate::hilbert::{enumerate_basis, BasisConfig};
    use crate::model::{build_hamiltonian, ModelParams};
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_hopping_spectrum_is_sums_of_single_site_energies() {
        // With A = 0 the sector-2 eigenvalues are all sums of single-site
        // dressed energies with total excitation 2.
        let basis = enumerate_basis(2);
        for &delta in &[-3.0, -0.5, 0.0, 1.7, 6.0] {
            let params = ModelParams::from_reduced(delta, 0.0, 1.0, 0.4).unwrap();
            let h = build_hamiltonian(&params, &basis);
            let eig = diagonalize(&h).unwrap();

            let e1m = dressed_energy(1, Branch::Minus, &params);
            let e1p = dressed_energy(1, Branch::Plus, &params);
            let e2m = dressed_energy(2, Branch::Minus, &params);
            let e2p = dressed_energy(2, Branch::Plus, &params);
            let mut expected = vec![
                2.0 * e1m,
                e1m + e1p,
                e1m + e1p,
                2.0 * e1p,
                e2m,
                e2m,
                e2p,
                e2p,
            ];
            expected.sort_by(f64::total_cmp);
            for (got, want) in eig.values.iter().zip(&expected) {
                assert_abs_diff_eq!(got, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn atomic_limit_ground_state() {
        // Δ = −50g, small hopping: ground ≈ (e,0;e,0) with energy ≈ 2ω_a,
        // lowered by the second-order dressing shift ≈ 2g²/|Δ|.
        let basis = enumerate_basis(2);
        let params = ModelParams::from_reduced(-50.0, 0.01, 1.0, 0.0).unwrap();
        let h = build_hamiltonian(&params, &basis);
        let gs = ground_state(&h).unwrap();
        let correction = 2.0 * params.g * params.g / 50.0;
        assert_abs_diff_eq!(gs.energy, 2.0 * params.omega_a - correction, epsilon = 1e-3);
        let k = basis.index_of(&BasisConfig::new(1, 0, 1, 0)).unwrap();
        assert!(gs.vector.amplitudes()[k] > 0.999);
        assert!(!gs.degenerate);
    }

    #[test]
    fn hopping_sign_is_a_gauge_choice() {
        // a₂ → −a₂ maps A → −A and leaves the spectrum and every entropy
        // unchanged
        let basis = enumerate_basis(2);
        for &delta in &[-8.0, 0.0, 3.0] {
            let plus = build_hamiltonian(
                &ModelParams::from_reduced(delta, 2.5, 1.0, 0.0).unwrap(),
                &basis,
            );
            let minus = build_hamiltonian(
                &ModelParams::from_reduced(delta, -2.5, 1.0, 0.0).unwrap(),
                &basis,
            );
            let ep = diagonalize(&plus).unwrap();
            let em = diagonalize(&minus).unwrap();
            for (a, b) in ep.values.iter().zip(&em.values) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
            let rp = crate::entanglement::all_bipartite_entropies(
                &ground_from_decomposition(&plus, &ep).unwrap(),
            )
            .unwrap();
            let rm = crate::entanglement::all_bipartite_entropies(
                &ground_from_decomposition(&minus, &em).unwrap(),
            )
            .unwrap();
            for ((_, a, _), (_, b, _)) in rp.values().iter().zip(rm.values().iter()) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn ground_vector_independent_of_cavity_frequency() {
        let basis = enumerate_basis(2);
        let a = ground_state(&build_hamiltonian(
            &ModelParams::from_reduced(-2.0, 0.7, 1.0, 0.0).unwrap(),
            &basis,
        ))
        .unwrap();
        let b = ground_state(&build_hamiltonian(
            &ModelParams::from_reduced(-2.0, 0.7, 1.0, 100.0).unwrap(),
            &basis,
        ))
        .unwrap();
        // sign convention makes the vectors directly comparable
        for (x, y) in a.vector.amplitudes().iter().zip(b.vector.amplitudes()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(b.energy - a.energy, 2.0 * 100.0, epsilon = 1e-9);
    }

    #[test]
    fn residuals_within_contract() {
        let basis = enumerate_basis(2);
        let params = ModelParams::from_reduced(1.3, 4.2, 1.0, 0.0).unwrap();
        let h = build_hamiltonian(&params, &basis);
        let eig = diagonalize(&h).unwrap();
        let norm = h.matrix.frobenius_norm();
        for r in &eig.residuals {
            assert!(*r <= 1e-10 * norm.max(1.0));
        }
    }

    #[test]
    fn degeneracy_flag_fires_at_exact_crossings() {
        // a scalar matrix has a zero gap everywhere
        let basis = enumerate_basis(2);
        let h = crate::model::HamiltonianMatrix {
            basis,
            matrix: {
                let mut m = crate::linalg::Matrix::zeros(8);
                for i in 0..8 {
                    m[(i, i)] = 3.0;
                }
                m
            },
        };
        let gs = ground_state(&h).unwrap();
        assert_eq!(gs.gap, 0.0);
        assert!(gs.degenerate);
    }

    #[test]
    fn one_dimensional_sector_has_infinite_gap() {
        let basis = enumerate_basis(0);
        let params = ModelParams::from_reduced(1.0, 0.5, 1.0, 0.0).unwrap();
        let gs = ground_state(&build_hamiltonian(&params, &basis)).unwrap();
        assert_eq!(gs.energy, 0.0);
        assert_eq!(gs.gap, f64::INFINITY);
        assert!(!gs.degenerate);
    }

    #[test]
    fn sign_convention_fixes_largest_amplitude_positive() {
        let mut amps = vec![0.3, -0.9, 0.2];
        fix_sign(&mut amps);
        assert_eq!(amps, vec![-0.3, 0.9, -0.2]);
        let mut amps = vec![0.3, 0.9, -0.2];
        fix_sign(&mut amps);
        assert_eq!(amps, vec![0.3, 0.9, -0.2]);
    }
}
