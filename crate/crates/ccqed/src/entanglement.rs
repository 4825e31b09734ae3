//! Partial traces over any subset of the four factors (atom1, cavity1, atom2,
//! cavity2) and von Neumann entanglement entropies, in bits.
//!
//! Up to exchanging the two identical sites there are five inequivalent
//! bipartitions of the ground state: one site (A1C1), one atom (A1), one
//! cavity (C1), both atoms (A1A2) and the cross pairing (A1C2). Dimension
//! caps the entropies: S(A1) ≤ 1, S(C1) ≤ log₂3, S(A1A2) ≤ 2. Two
//! excitations leave only 5 reachable atom-cavity states at a site, so
//! S(A1C1), S(A1C2) ≤ log₂5 rather than log₂6.
//!
//! Two independent routes are shipped: eigenvalues of the reduced density
//! matrix and singular values of the reshaped state (Schmidt route). Each
//! asserts the other in tests; the partial trace is where indexing bugs
//! would hide.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{factor_dims, StateVector};
use crate::linalg::{jacobi_eigen, singular_values, Matrix};
use crate::spectra::GroundStateResult;

/// Eigenvalues in [−1e-12, 0) are clamped to zero before the entropy sum.
const EIGENVALUE_CLAMP: f64 = 1e-12;
/// Below −1e-9 a reduced-density eigenvalue indicates a logic bug, not roundoff.
const EIGENVALUE_HARD_ERROR: f64 = -1e-9;
/// Allowed deviation of Tr ρ from 1.
const TRACE_TOLERANCE: f64 = 1e-9;

/// Subset of the four factors, in the global order (A1, C1, A2, C2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorSet(u8);

impl FactorSet {
    pub const ATOM1: FactorSet = FactorSet(0b0001);
    pub const CAVITY1: FactorSet = FactorSet(0b0010);
    pub const ATOM2: FactorSet = FactorSet(0b0100);
    pub const CAVITY2: FactorSet = FactorSet(0b1000);
    /// Atom and cavity of site 1.
    pub const SITE1: FactorSet = FactorSet(0b0011);
    /// Atom and cavity of site 2.
    pub const SITE2: FactorSet = FactorSet(0b1100);
    /// Both atoms.
    pub const ATOMS: FactorSet = FactorSet(0b0101);
    /// Atom of site 1 with the cavity of site 2.
    pub const CROSS: FactorSet = FactorSet(0b1001);

    /// Validated constructor: the kept set must be a nonempty proper subset.
    pub fn new(bits: u8) -> Result<FactorSet> {
        if bits == 0 || bits >= 0b1111 {
            return Err(Error::InvalidFactorSet);
        }
        Ok(FactorSet(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn complement(self) -> FactorSet {
        FactorSet(!self.0 & 0b1111)
    }

    pub fn contains(self, factor: usize) -> bool {
        debug_assert!(factor < 4);
        self.0 & (1 << factor) != 0
    }

    /// Kept factor indices, ascending.
    pub fn factors(self) -> Vec<usize> {
        (0..4).filter(|&f| self.contains(f)).collect()
    }

    /// All 14 nonempty proper subsets.
    pub fn all_bipartitions() -> impl Iterator<Item = FactorSet> {
        (1u8..0b1111).map(FactorSet)
    }

    /// Swap the two sites: A1 ↔ A2, C1 ↔ C2.
    pub fn site_swapped(self) -> FactorSet {
        let b = self.0;
        FactorSet(((b & 0b0011) << 2) | ((b & 0b1100) >> 2))
    }
}

impl fmt::Display for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["A1", "C1", "A2", "C2"];
        for (i, name) in NAMES.iter().enumerate() {
            if self.contains(i) {
                f.write_str(name)?;
            }
        }
        Ok(())
    }
}

/// Reduced density matrix over the kept factors.
#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix {
    pub kept: FactorSet,
    pub matrix: Matrix,
}

fn check_norm(full_state: &[f64]) -> Result<()> {
    let norm2: f64 = full_state.iter().map(|a| a * a).sum();
    if (norm2 - 1.0).abs() > TRACE_TOLERANCE {
        return Err(Error::Integrity(format!(
            "full-space state norm² = {norm2}, expected 1"
        )));
    }
    Ok(())
}

/// Split the factor dimensions into kept and traced parts with the row-major
/// offset of each sub-index into the full vector.
fn partition_offsets(sector_n: u8, kept: FactorSet) -> (Vec<usize>, Vec<usize>) {
    let dims = factor_dims(sector_n);
    let mut strides = [0usize; 4];
    let mut s = 1;
    for f in (0..4).rev() {
        strides[f] = s;
        s *= dims[f];
    }

    // row-major offsets for every kept multi-index and every traced multi-index
    let offsets = |factors: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize];
        for &f in factors {
            let mut next = Vec::with_capacity(out.len() * dims[f]);
            for &base in &out {
                for d in 0..dims[f] {
                    next.push(base + d * strides[f]);
                }
            }
            out = next;
        }
        out
    };

    let kept_factors = kept.factors();
    let traced_factors = kept.complement().factors();
    (offsets(&kept_factors), offsets(&traced_factors))
}

/// Partial trace of the pure state over the complement of `kept`, by direct
/// summation over traced multi-indices under the global factor ordering.
pub fn reduced_density(
    full_state: &[f64],
    sector_n: u8,
    kept: FactorSet,
) -> Result<ReducedDensityMatrix> {
    let full_dim: usize = factor_dims(sector_n).iter().product();
    if full_state.len() != full_dim {
        return Err(Error::DimensionMismatch {
            got: full_state.len(),
            expected: full_dim,
        });
    }
    check_norm(full_state)?;

    let (kept_offsets, traced_offsets) = partition_offsets(sector_n, kept);
    let dk = kept_offsets.len();
    let mut rho = Matrix::zeros(dk);
    for i in 0..dk {
        for j in 0..=i {
            let mut sum = 0.0;
            for &t in &traced_offsets {
                sum += full_state[kept_offsets[i] + t] * full_state[kept_offsets[j] + t];
            }
            rho[(i, j)] = sum;
            rho[(j, i)] = sum;
        }
    }
    Ok(ReducedDensityMatrix { kept, matrix: rho })
}

/// S(ρ) = −Σ pᵢ log₂ pᵢ over the eigenvalues of the reduced density matrix,
/// with 0·log 0 := 0.
pub fn von_neumann_entropy(rho: &ReducedDensityMatrix) -> Result<f64> {
    let trace = rho.matrix.trace();
    if (trace - 1.0).abs() > TRACE_TOLERANCE {
        return Err(Error::Integrity(format!(
            "reduced density matrix trace = {trace}, expected 1"
        )));
    }
    let eig = jacobi_eigen(&rho.matrix)?;
    entropy_from_probabilities(&eig.values)
}

/// Entropy of the bipartition from the Schmidt route: singular values of the
/// state reshaped as a kept × traced matrix. Independent of the
/// density-matrix path; the two must agree to 1e-9.
pub fn schmidt_entropy(full_state: &[f64], sector_n: u8, kept: FactorSet) -> Result<f64> {
    let dims = factor_dims(sector_n);
    let full_dim: usize = dims.iter().product();
    if full_state.len() != full_dim {
        return Err(Error::DimensionMismatch {
            got: full_state.len(),
            expected: full_dim,
        });
    }
    check_norm(full_state)?;

    // reshape by decomposing each full index into kept/traced digits
    let kept_factors = kept.factors();
    let traced_factors = kept.complement().factors();
    let dk: usize = kept_factors.iter().map(|&f| dims[f]).product();
    let dt: usize = traced_factors.iter().map(|&f| dims[f]).product();
    let mut m = vec![0.0; dk * dt];
    for (idx, &amp) in full_state.iter().enumerate() {
        let mut digits = [0usize; 4];
        let mut rest = idx;
        for f in (0..4).rev() {
            digits[f] = rest % dims[f];
            rest /= dims[f];
        }
        let row = kept_factors
            .iter()
            .fold(0, |acc, &f| acc * dims[f] + digits[f]);
        let col = traced_factors
            .iter()
            .fold(0, |acc, &f| acc * dims[f] + digits[f]);
        m[row * dt + col] = amp;
    }

    let sv = singular_values(&m, dk, dt)?;
    let probs: Vec<f64> = sv.iter().map(|s| s * s).collect();
    entropy_from_probabilities(&probs)
}

fn entropy_from_probabilities(probs: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &p in probs {
        if p < EIGENVALUE_HARD_ERROR {
            return Err(Error::Integrity(format!(
                "negative probability {p:e} beyond roundoff"
            )));
        }
        // anything below the clamp window is roundoff around an exact zero
        if p > EIGENVALUE_CLAMP {
            s -= p * p.log2();
        }
    }
    Ok(s.max(0.0))
}

/// The five bipartite entropies of the ground state, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// S(A1C1), one full site against the other.
    pub site: f64,
    /// S(A1), one atom against the rest.
    pub atom: f64,
    /// S(C1), one cavity against the rest.
    pub cavity: f64,
    /// S(A1A2), the two atoms against the two cavities.
    pub atoms: f64,
    /// S(A1C2), atom of one site with the cavity of the other.
    pub cross: f64,
    /// Propagated from the ground state: entropies at a degenerate point are
    /// convention-dependent.
    pub degenerate: bool,
}

impl EntropyReport {
    /// Dimension bounds (log₂ of the kept-space dimension; the site cuts are
    /// capped at 5 reachable states, not 6).
    pub const MAX_SITE: f64 = 2.321928094887362; // log₂ 5
    pub const MAX_ATOM: f64 = 1.0;
    pub const MAX_CAVITY: f64 = 1.584962500721156; // log₂ 3
    pub const MAX_ATOMS: f64 = 2.0;
    pub const MAX_CROSS: f64 = Self::MAX_SITE;

    pub fn values(&self) -> [(&'static str, f64, f64); 5] {
        [
            ("S_site", self.site, Self::MAX_SITE),
            ("S_atom", self.atom, Self::MAX_ATOM),
            ("S_cavity", self.cavity, Self::MAX_CAVITY),
            ("S_atoms", self.atoms, Self::MAX_ATOMS),
            ("S_cross", self.cross, Self::MAX_CROSS),
        ]
    }

    /// All five entropies within [0, bound + tol].
    pub fn within_bounds(&self, tol: f64) -> bool {
        self.values()
            .iter()
            .all(|&(_, s, bound)| s >= -tol && s <= bound + tol)
    }

    /// Indicator used for the multipartite-entanglement discussion: every
    /// bipartition of the four factors carries nonzero entropy.
    pub fn all_positive(&self, threshold: f64) -> bool {
        self.values().iter().all(|&(_, s, _)| s > threshold)
    }
}

/// Compute the five bipartite entropies of a sector ground state via the
/// density-matrix route.
pub fn all_bipartite_entropies(ground: &GroundStateResult) -> Result<EntropyReport> {
    let full = ground.vector.embed();
    let sector_n = ground.vector.basis().sector_n();
    let entropy = |kept: FactorSet| -> Result<f64> {
        von_neumann_entropy(&reduced_density(&full, sector_n, kept)?)
    };
    Ok(EntropyReport {
        site: entropy(FactorSet::SITE1)?,
        atom: entropy(FactorSet::ATOM1)?,
        cavity: entropy(FactorSet::CAVITY1)?,
        atoms: entropy(FactorSet::ATOMS)?,
        cross: entropy(FactorSet::CROSS)?,
        degenerate: ground.degenerate,
    })
}

/// Entropy of an arbitrary sector state across one cut (density route).
pub fn entropy_of(state: &StateVector, kept: FactorSet) -> Result<f64> {
    von_neumann_entropy(&reduced_density(
        &state.embed(),
        state.basis().sector_n(),
        kept,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{enumerate_basis, BasisConfig};
    use crate::model::{build_hamiltonian, ModelParams};
    use crate::spectra::ground_state;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn basis_state(cfg: BasisConfig) -> StateVector {
        let basis = enumerate_basis(2);
        let mut amps = vec![0.0; basis.len()];
        amps[basis.index_of(&cfg).unwrap()] = 1.0;
        StateVector::new(basis, amps).unwrap()
    }

    /// (|g2,g0⟩ + |g0,g2⟩ − √2|g1,g1⟩)/2, the two-boson ground state of pure
    /// hopping, i.e. the photonic superfluid limit.
    fn condensate() -> StateVector {
        let basis = enumerate_basis(2);
        let mut amps = vec![0.0; basis.len()];
        amps[basis.index_of(&BasisConfig::new(0, 2, 0, 0)).unwrap()] = 0.5;
        amps[basis.index_of(&BasisConfig::new(0, 0, 0, 2)).unwrap()] = 0.5;
        amps[basis.index_of(&BasisConfig::new(0, 1, 0, 1)).unwrap()] = -0.5 * 2.0f64.sqrt();
        StateVector::new(basis, amps).unwrap()
    }

    fn random_state(seed: u64) -> StateVector {
        // small xorshift; proptest drives the seeds
        let basis = enumerate_basis(2);
        let mut s = seed.max(1);
        let amps: Vec<f64> = (0..basis.len())
            .map(|_| {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        StateVector::normalized(basis, amps).unwrap()
    }

    #[test]
    fn factor_set_validation_and_complement() {
        assert!(FactorSet::new(0).is_err());
        assert!(FactorSet::new(0b1111).is_err());
        let s = FactorSet::new(0b0011).unwrap();
        assert_eq!(s, FactorSet::SITE1);
        assert_eq!(s.complement(), FactorSet::SITE2);
        assert_eq!(s.to_string(), "A1C1");
        assert_eq!(FactorSet::CROSS.to_string(), "A1C2");
        assert_eq!(FactorSet::CROSS.site_swapped().to_string(), "C1A2");
        assert_eq!(FactorSet::all_bipartitions().count(), 14);
    }

    #[test]
    fn reduced_density_rejects_bad_input() {
        let full = vec![0.0; 36];
        assert!(matches!(
            reduced_density(&full, 2, FactorSet::ATOM1),
            Err(Error::Integrity(_))
        ));
        let state = basis_state(BasisConfig::new(1, 0, 1, 0)).embed();
        assert!(matches!(
            reduced_density(&state[..10], 2, FactorSet::ATOM1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn product_state_reduces_to_projector() {
        // (e,0;e,0) kept {A1} → diag(0, 1) in (g, e) order
        let full = basis_state(BasisConfig::new(1, 0, 1, 0)).embed();
        let rho = reduced_density(&full, 2, FactorSet::ATOM1).unwrap();
        assert_eq!(rho.matrix.dim(), 2);
        assert_abs_diff_eq!(rho.matrix[(0, 0)], 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(rho.matrix[(1, 1)], 1.0, epsilon = 0.0);
        assert_abs_diff_eq!(rho.matrix[(0, 1)], 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn condensate_cavity_trace_by_hand() {
        // hand partial trace: diag(1/4, 1/2, 1/4) → 1.5 bits
        let full = condensate().embed();
        let rho = reduced_density(&full, 2, FactorSet::CAVITY1).unwrap();
        for c in 0..3 {
            for cp in 0..3 {
                let expected = match (c, cp) {
                    (0, 0) | (2, 2) => 0.25,
                    (1, 1) => 0.5,
                    _ => 0.0,
                };
                assert_abs_diff_eq!(rho.matrix[(c, cp)], expected, epsilon = 1e-15);
            }
        }
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), 1.5, epsilon = 1e-12);
        // Schmidt route: singular values 1/2, 1/√2, 1/2
        assert_abs_diff_eq!(
            schmidt_entropy(&full, 2, FactorSet::CAVITY1).unwrap(),
            1.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn maximally_mixed_qubit_is_one_bit() {
        let mut m = Matrix::zeros(2);
        m[(0, 0)] = 0.5;
        m[(1, 1)] = 0.5;
        let rho = ReducedDensityMatrix {
            kept: FactorSet::ATOM1,
            matrix: m,
        };
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn integrity_errors_fire() {
        let mut m = Matrix::zeros(2);
        m[(0, 0)] = 0.7;
        m[(1, 1)] = 0.7;
        let rho = ReducedDensityMatrix {
            kept: FactorSet::ATOM1,
            matrix: m,
        };
        assert!(matches!(
            von_neumann_entropy(&rho),
            Err(Error::Integrity(_))
        ));

        let mut m = Matrix::zeros(2);
        m[(0, 0)] = 1.0 + 2e-6;
        m[(1, 1)] = -2e-6; // negative eigenvalue beyond the hard gate
        let rho = ReducedDensityMatrix {
            kept: FactorSet::ATOM1,
            matrix: m,
        };
        assert!(matches!(
            von_neumann_entropy(&rho),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn resonant_dressed_product_site_cut_is_pure() {
        let basis = enumerate_basis(2);
        let params = ModelParams::from_reduced(0.0, 0.0, 1.0, 0.3).unwrap();
        let prod = crate::dressed::a0_ground_state(&params, &basis).unwrap();
        let full = prod.vector.embed();
        let rho = reduced_density(&full, 2, FactorSet::SITE1).unwrap();
        let eig = jacobi_eigen(&rho.matrix).unwrap();
        let rank = eig.values.iter().filter(|&&p| p > 1e-12).count();
        assert_eq!(rank, 1);
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), 0.0, epsilon = 1e-12);
    }

    fn report_at(delta: f64, hop: f64, omega_c: f64) -> EntropyReport {
        let basis = enumerate_basis(2);
        let params = ModelParams::from_reduced(delta, hop, 1.0, omega_c).unwrap();
        let gs = ground_state(&build_hamiltonian(&params, &basis)).unwrap();
        all_bipartite_entropies(&gs).unwrap()
    }

    #[test]
    fn polaritonic_insulator_at_resonance() {
        // maximally entangled atom-photon pair at each site, no intersite
        // entanglement
        let r = report_at(0.0, 0.01, 0.0);
        assert_abs_diff_eq!(r.atom, 1.0, epsilon = 1e-3);
        assert!(r.site < 0.05);
    }

    #[test]
    fn photonic_superfluid_entropies_approach_three_halves() {
        let r = report_at(50.0, 0.01, 0.0);
        for s in [r.site, r.cavity, r.cross] {
            assert_abs_diff_eq!(s, 1.5, epsilon = 0.02);
        }
        assert!(r.atom < 1e-2);
        assert!(r.atoms < 1e-2);
    }

    #[test]
    fn atomic_insulator_entropies_match_dressed_product() {
        // All five entropies are small ("nearly zero" on the figure scale);
        // the per-site polaritonic admixture p = (1 + Δ/√(Δ²+4g²))/2 sets the
        // exact values: S_atom = S_cavity = h(p), S_atoms = S_cross = 2h(p).
        let r = report_at(-50.0, 0.01, 0.0);
        let delta = -50.0f64;
        let p = 0.5 * (1.0 + delta / (delta * delta + 4.0).sqrt());
        let h = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!(r.site < 1e-4);
        assert_abs_diff_eq!(r.atom, h, epsilon = 1e-3);
        assert_abs_diff_eq!(r.cavity, h, epsilon = 1e-3);
        assert_abs_diff_eq!(r.atoms, 2.0 * h, epsilon = 2e-3);
        assert_abs_diff_eq!(r.cross, 2.0 * h, epsilon = 2e-3);
        assert!(r.values().iter().all(|&(_, s, _)| s < 0.02));
    }

    #[test]
    fn photonic_entropies_become_equivalent_at_large_detuning() {
        // with the atoms frozen in |g⟩ the site, cavity and cross cuts all
        // reduce to the same photon bipartition
        let r = report_at(300.0, 0.01, 0.0);
        let spread = [r.site, r.cavity, r.cross]
            .iter()
            .fold(f64::NEG_INFINITY, |m, s| m.max(*s))
            - [r.site, r.cavity, r.cross]
                .iter()
                .fold(f64::INFINITY, |m, s| m.min(*s));
        assert!(spread < 1e-8, "spread {spread:e}");
        assert_abs_diff_eq!(r.site, 1.5, epsilon = 1e-4);
    }

    #[test]
    fn entropy_report_gauge_invariant_in_cavity_frequency() {
        let a = report_at(-3.0, 1.5, 0.0);
        let b = report_at(-3.0, 1.5, 250.0);
        for ((_, x, _), (_, y, _)) in a.values().iter().zip(b.values().iter()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
    }

    #[test]
    fn site_swap_symmetry_of_ground_state() {
        let basis = enumerate_basis(2);
        for &(delta, hop) in &[(-4.0, 0.1), (0.0, 0.01), (3.0, 2.0), (-10.0, 10.0)] {
            let params = ModelParams::from_reduced(delta, hop, 1.0, 0.0).unwrap();
            let gs = ground_state(&build_hamiltonian(&params, &basis)).unwrap();
            if gs.degenerate {
                continue;
            }
            let full = gs.vector.embed();
            for kept in [FactorSet::ATOM1, FactorSet::CAVITY1, FactorSet::CROSS] {
                let s1 = von_neumann_entropy(&reduced_density(&full, 2, kept).unwrap()).unwrap();
                let s2 =
                    von_neumann_entropy(&reduced_density(&full, 2, kept.site_swapped()).unwrap())
                        .unwrap();
                assert_abs_diff_eq!(s1, s2, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn site_density_matrix_has_rank_at_most_five() {
        let basis = enumerate_basis(2);
        for &(delta, hop) in &[(-12.0, 8.0), (0.0, 0.5), (6.0, 0.01)] {
            let params = ModelParams::from_reduced(delta, hop, 1.0, 0.0).unwrap();
            let gs = ground_state(&build_hamiltonian(&params, &basis)).unwrap();
            let rho = reduced_density(&gs.vector.embed(), 2, FactorSet::SITE1).unwrap();
            let eig = jacobi_eigen(&rho.matrix).unwrap();
            assert_eq!(eig.values.len(), 6);
            // the sixth state (e with 2 photons) is unreachable with N = 2
            assert!(eig.values[0].abs() < 1e-12);
        }
    }

    proptest! {
        /// Pure global state: S(kept) = S(complement) for every bipartition.
        #[test]
        fn complement_symmetry(seed in 1u64..u64::MAX) {
            let full = random_state(seed).embed();
            for kept in FactorSet::all_bipartitions() {
                let s = von_neumann_entropy(&reduced_density(&full, 2, kept).unwrap()).unwrap();
                let sc = von_neumann_entropy(
                    &reduced_density(&full, 2, kept.complement()).unwrap(),
                )
                .unwrap();
                prop_assert!((s - sc).abs() < 1e-10, "{kept}: {s} vs {sc}");
            }
        }

        /// The Schmidt route agrees with the density-matrix route.
        #[test]
        fn schmidt_matches_density_route(seed in 1u64..u64::MAX) {
            let full = random_state(seed).embed();
            for kept in FactorSet::all_bipartitions() {
                let a = von_neumann_entropy(&reduced_density(&full, 2, kept).unwrap()).unwrap();
                let b = schmidt_entropy(&full, 2, kept).unwrap();
                prop_assert!((a - b).abs() < 1e-9, "{kept}: {a} vs {b}");
            }
        }

        /// Dimension bounds hold for arbitrary sector states.
        #[test]
        fn dimension_bounds(seed in 1u64..u64::MAX) {
            let state = random_state(seed);
            let full = state.embed();
            let bound_checks = [
                (FactorSet::SITE1, EntropyReport::MAX_SITE),
                (FactorSet::ATOM1, EntropyReport::MAX_ATOM),
                (FactorSet::CAVITY1, EntropyReport::MAX_CAVITY),
                (FactorSet::ATOMS, EntropyReport::MAX_ATOMS),
                (FactorSet::CROSS, EntropyReport::MAX_CROSS),
            ];
            for (kept, bound) in bound_checks {
                let s = von_neumann_entropy(&reduced_density(&full, 2, kept).unwrap()).unwrap();
                prop_assert!(s >= 0.0 && s <= bound + 1e-9, "{kept}: {s} > {bound}");
            }
        }
    }
}
