//! Fixed-excitation-number basis of the two-site atom+cavity product space.
//!
//! Each site holds a two-level atom (|g⟩, |e⟩) and a cavity mode. The total
//! excitation number N̂ = a₁†a₁ + a₂†a₂ + |e₁⟩⟨e₁| + |e₂⟩⟨e₂| is conserved, so
//! the dynamics splits into sectors of fixed N. Within the sector no site can
//! hold more than N photons, which makes the per-site photon cutoff N exact
//! rather than a numerical approximation.
//!
//! One factor-ordering convention is used everywhere: (atom1, cavity1, atom2,
//! cavity2), row-major, with per-factor dimensions (2, N+1, 2, N+1).

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Occupation of a single site: atom excitation (0 = |g⟩, 1 = |e⟩) and photon
/// count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiteConfig {
    pub atom: u8,
    pub photons: u8,
}

impl SiteConfig {
    pub fn excitation(&self) -> u8 {
        self.atom + self.photons
    }
}

/// Occupation of both sites. Derived ordering is lexicographic on
/// (atom1, photons1, atom2, photons2), which fixes the basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisConfig {
    pub site1: SiteConfig,
    pub site2: SiteConfig,
}

impl BasisConfig {
    pub fn new(atom1: u8, photons1: u8, atom2: u8, photons2: u8) -> Self {
        BasisConfig {
            site1: SiteConfig {
                atom: atom1,
                photons: photons1,
            },
            site2: SiteConfig {
                atom: atom2,
                photons: photons2,
            },
        }
    }

    pub fn total_excitation(&self) -> u8 {
        self.site1.excitation() + self.site2.excitation()
    }
}

/// Per-factor dimensions (atom1, cavity1, atom2, cavity2) for a sector with
/// `sector_n` excitations.
pub fn factor_dims(sector_n: u8) -> [usize; 4] {
    let c = sector_n as usize + 1;
    [2, c, 2, c]
}

/// Dimension of the full product space for the sector cutoff, 4(N+1)².
pub fn full_dim(sector_n: u8) -> usize {
    factor_dims(sector_n).iter().product()
}

/// Row-major index of a configuration in the full product space, under the
/// global factor ordering. Bijective on valid configurations.
pub fn full_space_index(config: &BasisConfig, sector_n: u8) -> Result<usize> {
    let cavity_dim = sector_n as usize + 1;
    for (site, cfg) in [(1usize, config.site1), (2, config.site2)] {
        if cfg.atom > 1 {
            return Err(Error::InvalidConfig(format!(
                "site {site}: atom occupancy {} exceeds 1",
                cfg.atom
            )));
        }
        if cfg.photons as usize >= cavity_dim {
            return Err(Error::InvalidConfig(format!(
                "site {site}: photon count {} exceeds sector cutoff {sector_n}",
                cfg.photons
            )));
        }
    }
    let (a1, c1) = (config.site1.atom as usize, config.site1.photons as usize);
    let (a2, c2) = (config.site2.atom as usize, config.site2.photons as usize);
    Ok(((a1 * cavity_dim + c1) * 2 + a2) * cavity_dim + c2)
}

/// Ordered basis of the fixed-N sector.
#[derive(Debug)]
pub struct ExcitationBasis {
    sector_n: u8,
    configs: Vec<BasisConfig>,
    index: HashMap<BasisConfig, usize>,
}

/// All configurations with the given total excitation, in lexicographic order
/// on (atom1, photons1, atom2, photons2). Sector 0 yields the single vacuum
/// configuration; sector 2 has exactly 8 configurations.
pub fn enumerate_basis(sector_n: u8) -> Arc<ExcitationBasis> {
    let mut configs = Vec::new();
    for atom1 in 0..=1u8 {
        for photons1 in 0..=sector_n {
            for atom2 in 0..=1u8 {
                for photons2 in 0..=sector_n {
                    let cfg = BasisConfig::new(atom1, photons1, atom2, photons2);
                    if cfg.total_excitation() == sector_n {
                        configs.push(cfg);
                    }
                }
            }
        }
    }
    let index = configs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    Arc::new(ExcitationBasis {
        sector_n,
        configs,
        index,
    })
}

impl ExcitationBasis {
    pub fn sector_n(&self) -> u8 {
        self.sector_n
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn configs(&self) -> &[BasisConfig] {
        &self.configs
    }

    pub fn config(&self, k: usize) -> BasisConfig {
        self.configs[k]
    }

    pub fn index_of(&self, config: &BasisConfig) -> Option<usize> {
        self.index.get(config).copied()
    }

    /// Full-product-space index of the k-th sector configuration.
    pub fn full_index(&self, k: usize) -> usize {
        // configs are validated at construction, so this cannot fail
        full_space_index(&self.configs[k], self.sector_n).expect("valid config")
    }
}

/// Normalized real amplitude vector over an [`ExcitationBasis`].
///
/// Amplitudes are real: the Hamiltonian is real symmetric in the occupation
/// basis, so eigenvectors can always be chosen real.
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: Arc<ExcitationBasis>,
    amplitudes: Vec<f64>,
}

impl StateVector {
    /// Wrap amplitudes, requiring unit norm within 1e-12.
    pub fn new(basis: Arc<ExcitationBasis>, amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                got: amplitudes.len(),
                expected: basis.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(StateVector { basis, amplitudes })
    }

    /// Wrap amplitudes after normalizing them.
    pub fn normalized(basis: Arc<ExcitationBasis>, mut amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                got: amplitudes.len(),
                expected: basis.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(StateVector { basis, amplitudes })
    }

    pub fn basis(&self) -> &Arc<ExcitationBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Embed into the full product space: a length-4(N+1)² vector, nonzero
    /// only at the sector indices. Norm-preserving.
    pub fn embed(&self) -> Vec<f64> {
        let mut full = vec![0.0; full_dim(self.basis.sector_n)];
        for (k, &a) in self.amplitudes.iter().enumerate() {
            full[self.basis.full_index(k)] = a;
        }
        full
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force filter of all product states, the independent counting
    /// oracle for `enumerate_basis`.
    fn brute_force_configs(sector_n: u8) -> Vec<BasisConfig> {
        let mut v = Vec::new();
        for a1 in 0..=1u8 {
            for c1 in 0..=sector_n {
                for a2 in 0..=1u8 {
                    for c2 in 0..=sector_n {
                        let cfg = BasisConfig::new(a1, c1, a2, c2);
                        if cfg.total_excitation() == sector_n {
                            v.push(cfg);
                        }
                    }
                }
            }
        }
        v
    }

    #[test]
    fn sector_zero_is_vacuum_only() {
        let basis = enumerate_basis(0);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis.config(0), BasisConfig::new(0, 0, 0, 0));
    }

    #[test]
    fn sector_one_has_four_configs() {
        let basis = enumerate_basis(1);
        let expected = [
            BasisConfig::new(0, 0, 0, 1),
            BasisConfig::new(0, 0, 1, 0),
            BasisConfig::new(0, 1, 0, 0),
            BasisConfig::new(1, 0, 0, 0),
        ];
        assert_eq!(basis.configs(), &expected);
    }

    #[test]
    fn sector_two_has_eight_configs() {
        let basis = enumerate_basis(2);
        assert_eq!(basis.len(), 8);
        assert_eq!(basis.configs(), brute_force_configs(2).as_slice());
    }

    #[test]
    fn basis_size_matches_brute_force_for_small_sectors() {
        for n in 0..=4u8 {
            assert_eq!(enumerate_basis(n).len(), brute_force_configs(n).len());
        }
    }

    #[test]
    fn ordering_is_lexicographic_and_duplicate_free() {
        for n in 0..=4u8 {
            let basis = enumerate_basis(n);
            for w in basis.configs().windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let basis = enumerate_basis(2);
        for (k, cfg) in basis.configs().iter().enumerate() {
            assert_eq!(basis.index_of(cfg), Some(k));
        }
        assert_eq!(basis.index_of(&BasisConfig::new(0, 0, 0, 0)), None);
    }

    #[test]
    fn full_space_index_row_major_examples() {
        // ((a1·3 + c1)·2 + a2)·3 + c2 for sector 2
        let idx = |cfg: &BasisConfig| full_space_index(cfg, 2).unwrap();
        assert_eq!(idx(&BasisConfig::new(0, 0, 0, 0)), 0);
        assert_eq!(idx(&BasisConfig::new(1, 1, 0, 0)), 24);
        assert_eq!(idx(&BasisConfig::new(0, 0, 1, 1)), 4);
        assert_eq!(idx(&BasisConfig::new(1, 0, 1, 0)), 21);
    }

    #[test]
    fn full_space_index_rejects_out_of_range() {
        assert!(full_space_index(&BasisConfig::new(2, 0, 0, 0), 2).is_err());
        assert!(full_space_index(&BasisConfig::new(0, 3, 0, 0), 2).is_err());
    }

    #[test]
    fn full_space_index_bijective_on_sector() {
        let basis = enumerate_basis(2);
        let mut seen = std::collections::HashSet::new();
        for k in 0..basis.len() {
            let idx = basis.full_index(k);
            assert!(idx < full_dim(2));
            assert!(seen.insert(idx), "duplicate full-space index {idx}");
        }
    }

    #[test]
    fn embed_unit_amplitude_example() {
        let basis = enumerate_basis(2);
        let k = basis
            .index_of(&BasisConfig::new(1, 0, 1, 0))
            .expect("(e,0;e,0) in sector 2");
        let mut amps = vec![0.0; basis.len()];
        amps[k] = 1.0;
        let full = StateVector::new(basis, amps).unwrap().embed();
        for (i, &x) in full.iter().enumerate() {
            assert_eq!(x, if i == 21 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn sector_embeddings_have_disjoint_support() {
        let b1 = enumerate_basis(1);
        let b2 = enumerate_basis(2);
        // compare supports within the sector-2 sized full space
        let support1: std::collections::HashSet<usize> = b1
            .configs()
            .iter()
            .map(|c| full_space_index(c, 2).unwrap())
            .collect();
        let support2: std::collections::HashSet<usize> =
            (0..b2.len()).map(|k| b2.full_index(k)).collect();
        assert!(support1.is_disjoint(&support2));
    }

    #[test]
    fn state_vector_validates_norm_and_length() {
        let basis = enumerate_basis(2);
        assert!(matches!(
            StateVector::new(basis.clone(), vec![0.5; 8]),
            Err(crate::error::Error::NotNormalized { .. })
        ));
        assert!(matches!(
            StateVector::new(basis.clone(), vec![1.0; 3]),
            Err(crate::error::Error::DimensionMismatch { .. })
        ));
        let v = StateVector::normalized(basis, vec![1.0; 8]).unwrap();
        let norm: f64 = v.amplitudes().iter().map(|a| a * a).sum();
        assert!((norm - 1.0).abs() < 1e-15);
    }

    proptest! {
        /// Embedding is an isometry: inner products are preserved.
        #[test]
        fn embed_preserves_inner_products(
            raw_a in proptest::collection::vec(-1.0f64..1.0, 8),
            raw_b in proptest::collection::vec(-1.0f64..1.0, 8),
        ) {
            prop_assume!(raw_a.iter().map(|x| x * x).sum::<f64>() > 1e-6);
            prop_assume!(raw_b.iter().map(|x| x * x).sum::<f64>() > 1e-6);
            let basis = enumerate_basis(2);
            let a = StateVector::normalized(basis.clone(), raw_a).unwrap();
            let b = StateVector::normalized(basis, raw_b).unwrap();
            let sector = a.inner(&b);
            let full: f64 = a.embed().iter().zip(b.embed()).map(|(x, y)| x * y).sum();
            prop_assert!((sector - full).abs() < 1e-12);
            let norm: f64 = a.embed().iter().map(|x| x * x).sum();
            prop_assert!((norm - 1.0).abs() < 1e-12);
        }
    }
}
