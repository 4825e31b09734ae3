//! Analytic single-site Jaynes-Cummings eigenstates (polaritons), used as the
//! zero-hopping cross-check oracle.
//!
//! For n ≥ 1 excitations at one site the eigenstates are
//!
//! ```text
//! |n−⟩ = sin(θ_n/2)|e, n−1⟩ − cos(θ_n/2)|g, n⟩
//! |n+⟩ = cos(θ_n/2)|e, n−1⟩ + sin(θ_n/2)|g, n⟩
//! ```
//!
//! with tan θ_n = 2g√n/Δ and energies E_n± = nω_c + Δ/2 ± ½√(Δ² + 4g²n); the
//! vacuum |g, 0⟩ has energy 0. The mixing angle is taken in (0, π) via the
//! two-argument arctangent with 2g√n > 0, which reproduces the detuning
//! limits up to a global phase: |n−⟩ → −|g⟩|n⟩ as Δ → +∞ (purely photonic)
//! and |n−⟩ → |e⟩|n−1⟩ as Δ → −∞ (purely atomic).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hilbert::{BasisConfig, ExcitationBasis, StateVector};
use crate::model::ModelParams;

/// Lower (−) or upper (+) polariton branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Minus,
    Plus,
}

/// Analytic dressed state of one site with n ≥ 1 excitations.
#[derive(Debug, Clone, Copy)]
pub struct DressedState {
    pub n: u8,
    pub branch: Branch,
    /// Mixing angle θ_n ∈ (0, π).
    pub theta: f64,
    /// Amplitude on |e, n−1⟩.
    pub amp_excited: f64,
    /// Amplitude on |g, n⟩.
    pub amp_photon: f64,
}

/// Mixing angle θ_n = atan2(2g√n, Δ) ∈ (0, π); π/2 at resonance, → 0 as
/// Δ → +∞ and → π as Δ → −∞.
pub fn mixing_angle(n: u8, g: f64, delta: f64) -> f64 {
    assert!(n >= 1 && g > 0.0);
    (2.0 * g * f64::from(n).sqrt()).atan2(delta)
}

/// Dressed-state amplitudes for the given branch.
pub fn dressed_state(n: u8, branch: Branch, params: &ModelParams) -> DressedState {
    let theta = mixing_angle(n, params.g, params.delta());
    let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    let (amp_excited, amp_photon) = match branch {
        Branch::Minus => (s, -c),
        Branch::Plus => (c, s),
    };
    DressedState {
        n,
        branch,
        theta,
        amp_excited,
        amp_photon,
    }
}

/// Analytic single-site energy E_n± = nω_c + Δ/2 ± ½√(Δ² + 4g²n).
pub fn dressed_energy(n: u8, branch: Branch, params: &ModelParams) -> f64 {
    assert!(n >= 1);
    let delta = params.delta();
    let root = (delta * delta + 4.0 * params.g * params.g * f64::from(n)).sqrt();
    let sign = match branch {
        Branch::Minus => -1.0,
        Branch::Plus => 1.0,
    };
    f64::from(n) * params.omega_c + 0.5 * delta + 0.5 * sign * root
}

/// Zero-hopping ground state of the two-excitation sector, built from the
/// analytic product eigenstates.
#[derive(Debug, Clone)]
pub struct ProductGroundState {
    pub vector: StateVector,
    pub energy: f64,
}

/// Minimal-energy product of single-site eigenstates with total excitation 2.
///
/// The candidates are |1b⟩⊗|1b'⟩ for the four branch pairs and |2b⟩⊗|0⟩,
/// |0⟩⊗|2b⟩. Fails with [`Error::DegenerateCandidates`] when the two lowest
/// candidates are closer than 1e-10·g, where the product construction is no
/// longer unique.
pub fn a0_ground_state(
    params: &ModelParams,
    basis: &Arc<ExcitationBasis>,
) -> Result<ProductGroundState> {
    assert_eq!(params.hop, 0.0, "analytic product states require A = 0");
    assert_eq!(basis.sector_n(), 2, "two-excitation sector only");

    // amplitudes of a single-site eigenstate as (atom, photons, amp) triples
    let site_amps = |n: u8, branch: Branch| -> Vec<(u8, u8, f64)> {
        if n == 0 {
            return vec![(0, 0, 1.0)];
        }
        let d = dressed_state(n, branch, params);
        vec![(1, n - 1, d.amp_excited), (0, n, d.amp_photon)]
    };
    let site_energy = |n: u8, branch: Branch| -> f64 {
        if n == 0 {
            0.0
        } else {
            dressed_energy(n, branch, params)
        }
    };

    let branches = [Branch::Minus, Branch::Plus];
    let mut candidates: Vec<((u8, Branch), (u8, Branch))> = Vec::new();
    for b1 in branches {
        for b2 in branches {
            candidates.push(((1, b1), (1, b2)));
        }
    }
    for b in branches {
        candidates.push(((2, b), (0, Branch::Minus)));
        candidates.push(((0, Branch::Minus), (2, b)));
    }

    let mut energies: Vec<f64> = candidates
        .iter()
        .map(|&((n1, b1), (n2, b2))| site_energy(n1, b1) + site_energy(n2, b2))
        .collect();

    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&i, &j| energies[i].total_cmp(&energies[j]));
    let best = order[0];
    let gap = energies[order[1]] - energies[best];
    if gap < 1e-10 * params.g {
        return Err(Error::DegenerateCandidates { gap });
    }
    let energy = energies.swap_remove(best);

    let ((n1, b1), (n2, b2)) = candidates[best];
    let mut amplitudes = vec![0.0; basis.len()];
    for &(a1, c1, amp1) in &site_amps(n1, b1) {
        for &(a2, c2, amp2) in &site_amps(n2, b2) {
            let k = basis
                .index_of(&BasisConfig::new(a1, c1, a2, c2))
                .expect("product config in sector");
            amplitudes[k] = amp1 * amp2;
        }
    }

    Ok(ProductGroundState {
        vector: StateVector::new(basis.clone(), amplitudes)?,
        energy,
    })
}
