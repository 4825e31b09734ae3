//! Local expectation values and the two variance order parameters.
//!
//! Both order parameters live on site 1: the variance of the total excitation
//! number n̂₁ = a₁†a₁ + |e₁⟩⟨e₁| signals the superfluid transition, and the
//! variance of the atomic excitation |e₁⟩⟨e₁| signals polaritonic character.
//! Both operators are diagonal in the occupation basis, so the expectation
//! values come straight from the amplitudes, independently of the
//! reduced-density-matrix machinery, which they cross-check.

use serde::{Deserialize, Serialize};

use crate::hilbert::{BasisConfig, StateVector};

/// Diagonal single-site operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteOperator {
    TotalSite1,
    AtomSite1,
    PhotonSite1,
    TotalSite2,
    AtomSite2,
    PhotonSite2,
}

impl SiteOperator {
    fn eigenvalue(self, cfg: &BasisConfig) -> f64 {
        let v = match self {
            SiteOperator::TotalSite1 => cfg.site1.excitation(),
            SiteOperator::AtomSite1 => cfg.site1.atom,
            SiteOperator::PhotonSite1 => cfg.site1.photons,
            SiteOperator::TotalSite2 => cfg.site2.excitation(),
            SiteOperator::AtomSite2 => cfg.site2.atom,
            SiteOperator::PhotonSite2 => cfg.site2.photons,
        };
        f64::from(v)
    }
}

/// ⟨ψ|O|ψ⟩ for a diagonal site operator.
pub fn expectation(state: &StateVector, op: SiteOperator) -> f64 {
    state
        .basis()
        .configs()
        .iter()
        .zip(state.amplitudes())
        .map(|(cfg, a)| a * a * op.eigenvalue(cfg))
        .sum()
}

/// ⟨O²⟩ − ⟨O⟩² for a diagonal site operator. Clamped at zero: the math
/// guarantees nonnegativity, the subtraction does not.
pub fn variance(state: &StateVector, op: SiteOperator) -> f64 {
    let (mut m1, mut m2) = (0.0, 0.0);
    for (cfg, a) in state.basis().configs().iter().zip(state.amplitudes()) {
        let p = a * a;
        let v = op.eigenvalue(cfg);
        m1 += p * v;
        m2 += p * v * v;
    }
    (m2 - m1 * m1).max(0.0)
}

/// Means and variances of the site-1 excitation numbers.
///
/// The atomic operator is a projector, so var_atom = p(1−p) with
/// p = mean_atom, bounded by 1/4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderParameters {
    pub mean_total: f64,
    pub var_total: f64,
    pub mean_atom: f64,
    pub var_atom: f64,
}

/// Both Fig.-style order parameters at once.
pub fn order_parameters(state: &StateVector) -> OrderParameters {
    OrderParameters {
        mean_total: expectation(state, SiteOperator::TotalSite1),
        var_total: variance(state, SiteOperator::TotalSite1),
        mean_atom: expectation(state, SiteOperator::AtomSite1),
        var_atom: variance(state, SiteOperator::AtomSite1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::enumerate_basis;
    use crate::model::{build_hamiltonian, ModelParams};
    use crate::spectra::ground_state;
    use approx::assert_abs_diff_eq;

    fn basis_state(a1: u8, c1: u8, a2: u8, c2: u8) -> StateVector {
        let basis = enumerate_basis(2);
        let mut amps = vec![0.0; basis.len()];
        amps[basis.index_of(&BasisConfig::new(a1, c1, a2, c2)).unwrap()] = 1.0;
        StateVector::new(basis, amps).unwrap()
    }

    fn ground_at(delta: f64, hop: f64) -> StateVector {
        let basis = enumerate_basis(2);
        let params = ModelParams::from_reduced(delta, hop, 1.0, 0.0).unwrap();
        ground_state(&build_hamiltonian(&params, &basis))
            .unwrap()
            .vector
    }

    #[test]
    fn number_eigenstate_has_zero_variance() {
        let s = basis_state(1, 0, 1, 0);
        let o = order_parameters(&s);
        assert_eq!(o.mean_total, 1.0);
        assert_eq!(o.var_total, 0.0);
        assert_eq!(o.mean_atom, 1.0);
        assert_eq!(o.var_atom, 0.0);
    }

    #[test]
    fn photonic_condensate_order_parameters() {
        // (|2,0⟩ + |0,2⟩ − √2|1,1⟩)/2: ⟨n₁⟩ = 1, ⟨n₁²⟩ = 3/2
        let basis = enumerate_basis(2);
        let mut amps = vec![0.0; basis.len()];
        amps[basis.index_of(&BasisConfig::new(0, 2, 0, 0)).unwrap()] = 0.5;
        amps[basis.index_of(&BasisConfig::new(0, 0, 0, 2)).unwrap()] = 0.5;
        amps[basis.index_of(&BasisConfig::new(0, 1, 0, 1)).unwrap()] = -0.5 * 2.0f64.sqrt();
        let s = StateVector::new(basis, amps).unwrap();
        let o = order_parameters(&s);
        assert_abs_diff_eq!(o.mean_total, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(o.var_total, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(o.var_atom, 0.0, epsilon = 0.0);
    }

    #[test]
    fn resonant_polariton_product_order_parameters() {
        // |1⁻,1⁻⟩: one excitation per site exactly, atomic weight 1/2
        let basis = enumerate_basis(2);
        let params = ModelParams::from_reduced(0.0, 0.0, 1.0, 0.0).unwrap();
        let prod = crate::dressed::a0_ground_state(&params, &basis).unwrap();
        let o = order_parameters(&prod.vector);
        assert_abs_diff_eq!(o.var_total, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(o.mean_atom, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(o.var_atom, 0.25, epsilon = 1e-14);
    }

    #[test]
    fn photon_number_on_pure_config() {
        let s = basis_state(1, 0, 0, 1);
        assert_eq!(expectation(&s, SiteOperator::PhotonSite1), 0.0);
        assert_eq!(expectation(&s, SiteOperator::PhotonSite2), 1.0);
        assert_eq!(expectation(&s, SiteOperator::AtomSite1), 1.0);
    }

    #[test]
    fn resonant_ground_state_has_half_atomic_excitation() {
        let s = ground_at(0.0, 0.01);
        assert_abs_diff_eq!(
            expectation(&s, SiteOperator::AtomSite1),
            0.5,
            epsilon = 1e-3
        );
    }

    #[test]
    fn site_two_twins_match_site_one_by_symmetry() {
        let s = ground_at(-3.0, 0.7);
        for (a, b) in [
            (SiteOperator::TotalSite1, SiteOperator::TotalSite2),
            (SiteOperator::AtomSite1, SiteOperator::AtomSite2),
            (SiteOperator::PhotonSite1, SiteOperator::PhotonSite2),
        ] {
            assert_abs_diff_eq!(expectation(&s, a), expectation(&s, b), epsilon = 1e-12);
            assert_abs_diff_eq!(variance(&s, a), variance(&s, b), epsilon = 1e-12);
        }
    }

    #[test]
    fn excitation_sum_rule_and_projector_identity() {
        for &(delta, hop) in &[(-20.0, 0.01), (-2.5, 0.8), (0.0, 5.0), (7.0, 12.0)] {
            let s = ground_at(delta, hop);
            let total = expectation(&s, SiteOperator::TotalSite1)
                + expectation(&s, SiteOperator::TotalSite2);
            assert_abs_diff_eq!(total, 2.0, epsilon = 1e-12);
            let o = order_parameters(&s);
            assert_abs_diff_eq!(
                o.var_atom,
                o.mean_atom * (1.0 - o.mean_atom),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn variance_limits_across_the_phase_diagram() {
        // insulator limits: atomic (Δ = −50g) and polaritonic (Δ = 0) at
        // small hopping → var_total ≈ 0
        for &delta in &[-50.0, 0.0] {
            let o = order_parameters(&ground_at(delta, 0.01));
            assert!(o.var_total < 1e-3, "delta {delta}: {}", o.var_total);
        }
        // deep photonic superfluid → var_total ≈ 0.5
        for &(delta, hop) in &[(50.0, 0.01), (50.0, 10.0)] {
            let o = order_parameters(&ground_at(delta, hop));
            assert_abs_diff_eq!(o.var_total, 0.5, epsilon = 0.02);
        }
    }
}
