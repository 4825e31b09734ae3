//! Oracle cross-checks wired to the `self-check` CLI subcommand: the sector
//! construction is validated against the independent full-space route, the
//! analytic zero-hopping product states, and the Schmidt entropy path.

use std::sync::Arc;

use crate::dressed;
use crate::entanglement::{
    all_bipartite_entropies, reduced_density, schmidt_entropy, von_neumann_entropy, FactorSet,
};
use crate::fullspace;
use crate::hilbert::{enumerate_basis, ExcitationBasis};
use crate::model::{build_hamiltonian, ModelParams};
use crate::observables::{expectation, order_parameters, SiteOperator};
use crate::spectra::ground_state;

/// Parameter points (Δ/g, A/g) exercised when none are given on the command
/// line: one per phase-diagram region plus the transition at large hopping.
pub const DEFAULT_POINTS: &[(f64, f64)] = &[
    (-5.0, 0.01),
    (0.0, 0.01),
    (5.0, 0.01),
    (-10.0, 10.0),
    (2.0, 3.0),
];

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_worst(name: &'static str, worst: f64, bound: f64, what: &str) -> CheckResult {
        CheckResult {
            name,
            passed: worst <= bound,
            detail: format!("max {what} = {worst:.3e} (bound {bound:.0e})"),
        }
    }
}

/// Run every oracle comparison at the given points.
pub fn run_self_check(points: &[(f64, f64)]) -> Vec<CheckResult> {
    let basis = enumerate_basis(2);
    vec![
        basis_enumeration(&basis),
        index_round_trip(&basis),
        number_conservation(points),
        sector_restriction(points, &basis),
        fullspace_ground(points, &basis),
        cutoff_independence(points),
        analytic_zero_hopping(points, &basis),
        schmidt_vs_density(points, &basis),
        complement_symmetry(points, &basis),
        gauge_invariance(points, &basis),
        local_identities(points, &basis),
    ]
}

fn params_at(delta: f64, hop: f64) -> ModelParams {
    ModelParams::from_reduced(delta, hop, 1.0, 0.0).expect("valid parameters")
}

fn basis_enumeration(basis: &Arc<ExcitationBasis>) -> CheckResult {
    let mut counted = 0usize;
    for a1 in 0..=1u8 {
        for c1 in 0..=2u8 {
            for a2 in 0..=1u8 {
                for c2 in 0..=2u8 {
                    if a1 + c1 + a2 + c2 == 2 {
                        counted += 1;
                    }
                }
            }
        }
    }
    let passed = basis.len() == 8 && counted == 8;
    CheckResult {
        name: "basis-enumeration",
        passed,
        detail: format!("sector 2: {} configs, brute force {counted}", basis.len()),
    }
}

fn index_round_trip(basis: &Arc<ExcitationBasis>) -> CheckResult {
    let ok = basis
        .configs()
        .iter()
        .enumerate()
        .all(|(k, cfg)| basis.index_of(cfg) == Some(k));
    CheckResult {
        name: "index-round-trip",
        passed: ok,
        detail: format!("{} configs re-indexed", basis.len()),
    }
}

fn number_conservation(points: &[(f64, f64)]) -> CheckResult {
    let worst = points
        .iter()
        .map(|&(d, h)| fullspace::number_commutator_max(&params_at(d, h)))
        .fold(0.0, f64::max);
    CheckResult::from_worst("number-conservation", worst, 1e-12, "|[H, N]| entry")
}

fn sector_restriction(points: &[(f64, f64)], basis: &Arc<ExcitationBasis>) -> CheckResult {
    let mut worst = 0.0f64;
    for &(d, h) in points {
        let p = params_at(d, h);
        let full = fullspace::build_full(&p);
        let sector = build_hamiltonian(&p, basis);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let diff = (full[(basis.full_index(i), basis.full_index(j))]
                    - sector.matrix[(i, j)])
                    .abs();
                worst = worst.max(diff);
            }
        }
    }
    CheckResult::from_worst("sector-restriction", worst, 1e-14, "entry difference")
}

fn fullspace_ground(points: &[(f64, f64)], basis: &Arc<ExcitationBasis>) -> CheckResult {
    let mut worst_overlap = 0.0f64;
    let mut worst_energy = 0.0f64;
    let mut skipped = 0usize;
    for &(d, h) in points {
        let p = params_at(d, h);
        let via_full = match fullspace::sector_ground_via_fullspace(&p) {
            Ok(g) => g,
            Err(e) => {
                return CheckResult {
                    name: "fullspace-ground",
                    passed: false,
                    detail: format!("({d}, {h}): {e}"),
                }
            }
        };
        let direct = match ground_state(&build_hamiltonian(&p, basis)) {
            Ok(g) => g,
            Err(e) => {
                return CheckResult {
                    name: "fullspace-ground",
                    passed: false,
                    detail: format!("({d}, {h}): {e}"),
                }
            }
        };
        if via_full.degenerate || direct.degenerate {
            skipped += 1;
            continue;
        }
        worst_overlap = worst_overlap.max(1.0 - via_full.vector.inner(&direct.vector).abs());
        worst_energy = worst_energy.max((via_full.energy - direct.energy).abs());
    }
    CheckResult {
        name: "fullspace-ground",
        passed: worst_overlap <= 1e-10 && worst_energy <= 1e-10,
        detail: format!(
            "max overlap deficit {worst_overlap:.3e}, max energy diff {worst_energy:.3e}, {skipped} degenerate skipped"
        ),
    }
}

fn cutoff_independence(points: &[(f64, f64)]) -> CheckResult {
    let mut worst = 0.0f64;
    for &(d, h) in points {
        let p = params_at(d, h);
        let at2 = fullspace::sector_block_eigenvalues(&p, 2);
        let at3 = fullspace::sector_block_eigenvalues(&p, 3);
        match (at2, at3) {
            (Ok(a), Ok(b)) => {
                for (x, y) in a.iter().zip(&b) {
                    worst = worst.max((x - y).abs());
                }
            }
            _ => {
                return CheckResult {
                    name: "cutoff-independence",
                    passed: false,
                    detail: "eigensolver failure".into(),
                }
            }
        }
    }
    CheckResult::from_worst("cutoff-independence", worst, 1e-12, "eigenvalue shift")
}

fn analytic_zero_hopping(points: &[(f64, f64)], basis: &Arc<ExcitationBasis>) -> CheckResult {
    let mut worst = 0.0f64;
    let mut skipped = 0usize;
    for &(d, _) in points {
        let p = params_at(d, 0.0);
        let analytic = match dressed::a0_ground_state(&p, basis) {
            Ok(a) => a,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        let numeric = match ground_state(&build_hamiltonian(&p, basis)) {
            Ok(g) => g,
            Err(e) => {
                return CheckResult {
                    name: "analytic-zero-hopping",
                    passed: false,
                    detail: e.to_string(),
                }
            }
        };
        worst = worst.max(1.0 - analytic.vector.inner(&numeric.vector).abs());
    }
    CheckResult {
        name: "analytic-zero-hopping",
        passed: worst <= 1e-10,
        detail: format!("max fidelity deficit {worst:.3e}, {skipped} degenerate skipped"),
    }
}

fn schmidt_vs_density(points: &[(f64, f64)], basis: &Arc<ExcitationBasis>) -> CheckResult {
    let mut worst = 0.0f64;
    for &(d, h) in points {
        let p = params_at(d, h);
        let gs = match ground_state(&build_hamiltonian(&p, basis)) {
            Ok(g) => g,
            Err(e) => {
                return CheckResult {
                    name: "schmidt-vs-density",
                    passed: false,
                    detail: e.to_string(),
                }
            }
        };
        let full = gs.vector.embed();
        for kept in FactorSet::all_bipartitions() {
            let density = reduced_density(&full, 2, kept).and_then(|rho| von_neumann_entropy(&rho));
            let schmidt = schmidt_entropy(&full, 2, kept);
            match (density, schmidt) {
                (Ok(a), Ok(b)) => worst = worst.max((a - b).abs()),
                _ => {
                    return CheckResult {
                        name: "schmidt-vs-density",
                        passed: false,
                        detail: format!("entropy failure at ({d}, {h}), kept {kept}"),
                    }
                }
            }
        }
    }
    CheckResult::from_worst("schmidt-vs-density", worst, 1e-9, "entropy difference")
}

fn complement_symmetry(points: &[(f64, f64)], basis: &Arc<ExcitationBasis>) -> CheckResult {
    let mut worst = 0.0f64;
    for &(d, h) in points {
        let p = params_at(d, h);
        let Ok(gs) = ground_state(&build_hamiltonian(&p, basis)) else {
            continue;
        };
        let full = gs.vector.embed();
        for kept in FactorSet::all_bipartitions() {
            let s = reduced_density(&full, 2, kept)
                .and_then(|r| von_neumann_entropy(&r))
                .unwrap_or(f64::NAN);
            let sc = reduced_density(&full, 2, kept.complement())
                .and_then(|r| von_neumann_entropy(&r))
                .unwrap_or(f64::NAN);
            worst = worst.max((s - sc).abs());
        }
    }
    CheckResult::from_worst("complement-symmetry", worst, 1e-10, "entropy asymmetry")
}

fn gauge_invariance(points: &[(f64, f64)], basis: &Arc<ExcitationBasis>) -> CheckResult {
    let mut worst = 0.0f64;
    for &(d, h) in points {
        let a = ModelParams::from_reduced(d, h, 1.0, 0.0).unwrap();
        let b = ModelParams::from_reduced(d, h, 1.0, 137.0).unwrap();
        let ra =
            ground_state(&build_hamiltonian(&a, basis)).and_then(|g| all_bipartite_entropies(&g));
        let rb =
            ground_state(&build_hamiltonian(&b, basis)).and_then(|g| all_bipartite_entropies(&g));
        let (Ok(ra), Ok(rb)) = (ra, rb) else {
            continue;
        };
        for ((_, x, _), (_, y, _)) in ra.values().iter().zip(rb.values().iter()) {
            worst = worst.max((x - y).abs());
        }
    }
    CheckResult::from_worst(
        "gauge-invariance",
        worst,
        1e-10,
        "entropy shift under omega_c",
    )
}

fn local_identities(points: &[(f64, f64)], basis: &Arc<ExcitationBasis>) -> CheckResult {
    let mut worst = 0.0f64;
    for &(d, h) in points {
        let p = params_at(d, h);
        let Ok(gs) = ground_state(&build_hamiltonian(&p, basis)) else {
            continue;
        };
        let sum = expectation(&gs.vector, SiteOperator::TotalSite1)
            + expectation(&gs.vector, SiteOperator::TotalSite2);
        worst = worst.max((sum - 2.0).abs());
        let o = order_parameters(&gs.vector);
        worst = worst.max((o.var_atom - o.mean_atom * (1.0 - o.mean_atom)).abs());
    }
    CheckResult::from_worst("local-identities", worst, 1e-12, "identity violation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_default_checks_pass() {
        let results = run_self_check(DEFAULT_POINTS);
        assert_eq!(results.len(), 11);
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn single_point_checks_pass() {
        for r in run_self_check(&[(-3.0, 0.5)]) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
