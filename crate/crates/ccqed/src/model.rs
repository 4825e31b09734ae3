//! Two-site coupled-cavity Hamiltonian on the fixed-excitation basis.
//!
//! H = Σ_j [ω_c a_j†a_j + ω_a|e_j⟩⟨e_j| + g(a_j†|g_j⟩⟨e_j| + a_j|e_j⟩⟨g_j|)]
//!     + A(a_1†a_2 + a_2†a_1)
//!
//! in rotating-wave form, with real g and A, so the matrix is real symmetric.
//! The physics depends only on Δ/g = (ω_a − ω_c)/g and A/g: shifting ω_c at
//! fixed Δ adds N·ω_c times the identity within a sector and leaves every
//! eigenvector (and hence every entropy) unchanged.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{BasisConfig, ExcitationBasis};
use crate::linalg::Matrix;

/// Physical parameters of the model. `hop` is the photon tunneling amplitude
/// between the two cavities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega_c: f64,
    pub omega_a: f64,
    pub g: f64,
    pub hop: f64,
}

impl ModelParams {
    pub fn new(omega_c: f64, omega_a: f64, g: f64, hop: f64) -> Result<Self> {
        let p = ModelParams {
            omega_c,
            omega_a,
            g,
            hop,
        };
        if [omega_c, omega_a, g, hop].iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfig("parameters must be finite".into()));
        }
        if g <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "coupling g must be positive, got {g}"
            )));
        }
        Ok(p)
    }

    /// Parameters from the reduced degrees of freedom Δ/g and A/g.
    pub fn from_reduced(delta_over_g: f64, hop_over_g: f64, g: f64, omega_c: f64) -> Result<Self> {
        ModelParams::new(omega_c, omega_c + delta_over_g * g, g, hop_over_g * g)
    }

    /// Detuning Δ = ω_a − ω_c.
    pub fn delta(&self) -> f64 {
        self.omega_a - self.omega_c
    }

    pub fn delta_over_g(&self) -> f64 {
        self.delta() / self.g
    }

    pub fn hop_over_g(&self) -> f64 {
        self.hop / self.g
    }
}

/// Real symmetric Hamiltonian over an excitation basis.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    pub basis: Arc<ExcitationBasis>,
    pub matrix: Matrix,
}

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Assemble the sector Hamiltonian.
///
/// Off-diagonal entries are written in symmetric pairs from the same computed
/// value, so the matrix equals its transpose bit for bit.
pub fn build_hamiltonian(params: &ModelParams, basis: &Arc<ExcitationBasis>) -> HamiltonianMatrix {
    let n = basis.len();
    let sector_n = basis.sector_n();
    let mut h = Matrix::zeros(n);

    for (i, cfg) in basis.configs().iter().enumerate() {
        let (a1, c1) = (cfg.site1.atom, cfg.site1.photons);
        let (a2, c2) = (cfg.site2.atom, cfg.site2.photons);

        h[(i, i)] = params.omega_c * f64::from(c1 + c2) + params.omega_a * f64::from(a1 + a2);

        // Jaynes-Cummings exchange at each site: |e, c⟩ ↔ |g, c+1⟩ with g√(c+1)
        if a1 == 1 && c1 < sector_n {
            let j = basis
                .index_of(&BasisConfig::new(0, c1 + 1, a2, c2))
                .expect("JC partner stays in sector");
            let val = params.g * f64::from(c1 + 1).sqrt();
            h[(i, j)] = val;
            h[(j, i)] = val;
        }
        if a2 == 1 && c2 < sector_n {
            let j = basis
                .index_of(&BasisConfig::new(a1, c1, 0, c2 + 1))
                .expect("JC partner stays in sector");
            let val = params.g * f64::from(c2 + 1).sqrt();
            h[(i, j)] = val;
            h[(j, i)] = val;
        }
        // photon hopping a_1†a_2: (c1, c2) → (c1+1, c2−1) with A√((c1+1)c2)
        if c2 >= 1 && c1 < sector_n {
            let j = basis
                .index_of(&BasisConfig::new(a1, c1 + 1, a2, c2 - 1))
                .expect("hopping partner stays in sector");
            let val = params.hop * f64::from((c1 + 1) * c2).sqrt();
            h[(i, j)] = val;
            h[(j, i)] = val;
        }
    }

    HamiltonianMatrix {
        basis: basis.clone(),
        matrix: h,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::enumerate_basis;
    use approx::assert_abs_diff_eq;

    fn entry(h: &HamiltonianMatrix, a: BasisConfig, b: BasisConfig) -> f64 {
        let i = h.basis.index_of(&a).unwrap();
        let j = h.basis.index_of(&b).unwrap();
        h.matrix[(i, j)]
    }

    #[test]
    fn ladder_matrix_elements() {
        let basis = enumerate_basis(2);
        let params = ModelParams::new(0.3, 1.1, 0.9, 0.4).unwrap();
        let h = build_hamiltonian(&params, &basis);

        // ⟨(g,2;g,0)| H |(e,1;g,0)⟩ = g√2, from a†|1⟩ = √2|2⟩
        assert_abs_diff_eq!(
            entry(
                &h,
                BasisConfig::new(0, 2, 0, 0),
                BasisConfig::new(1, 1, 0, 0)
            ),
            params.g * 2.0f64.sqrt(),
            epsilon = 0.0
        );
        // ⟨(g,2;g,0)| H |(g,1;g,1)⟩ = A√(2·1)
        assert_abs_diff_eq!(
            entry(
                &h,
                BasisConfig::new(0, 2, 0, 0),
                BasisConfig::new(0, 1, 0, 1)
            ),
            params.hop * 2.0f64.sqrt(),
            epsilon = 0.0
        );
        // ⟨(e,0;e,0)| H |(e,0;e,0)⟩ = 2ω_a
        assert_abs_diff_eq!(
            entry(
                &h,
                BasisConfig::new(1, 0, 1, 0),
                BasisConfig::new(1, 0, 1, 0)
            ),
            2.0 * params.omega_a,
            epsilon = 0.0
        );
    }

    #[test]
    fn symmetric_bit_identical() {
        let basis = enumerate_basis(2);
        let params = ModelParams::new(0.123, -0.456, 0.789, 1.618).unwrap();
        let h = build_hamiltonian(&params, &basis);
        assert!(h.matrix.is_symmetric_exact());
    }

    #[test]
    fn cavity_frequency_shift_is_scalar_in_sector() {
        // H(ω_c, ω_a) − H(0, Δ) = N·ω_c·Identity within the sector
        let basis = enumerate_basis(2);
        let omega_c = 7.3;
        let delta = -1.9;
        let a = build_hamiltonian(
            &ModelParams::new(omega_c, omega_c + delta, 1.0, 0.2).unwrap(),
            &basis,
        );
        let b = build_hamiltonian(&ModelParams::new(0.0, delta, 1.0, 0.2).unwrap(), &basis);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let expected = if i == j { 2.0 * omega_c } else { 0.0 };
                assert_abs_diff_eq!(
                    a.matrix[(i, j)] - b.matrix[(i, j)],
                    expected,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn zero_hopping_preserves_per_site_excitation() {
        let basis = enumerate_basis(2);
        let params = ModelParams::new(0.0, 2.5, 1.0, 0.0).unwrap();
        let h = build_hamiltonian(&params, &basis);
        for (i, ci) in basis.configs().iter().enumerate() {
            for (j, cj) in basis.configs().iter().enumerate() {
                if ci.site1.excitation() != cj.site1.excitation() {
                    assert_eq!(h.matrix[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 0.0, -1.0, 0.0).is_err());
        assert!(ModelParams::new(f64::NAN, 0.0, 1.0, 0.0).is_err());
        let p = ModelParams::from_reduced(-2.0, 0.5, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(p.delta(), -4.0, epsilon = 0.0);
        assert_abs_diff_eq!(p.delta_over_g(), -2.0, epsilon = 0.0);
        assert_abs_diff_eq!(p.hop, 1.0, epsilon = 0.0);
        assert_abs_diff_eq!(p.hop_over_g(), 0.5, epsilon = 0.0);
    }
}
