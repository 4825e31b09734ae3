//! Parameter sweeps over (Δ/g, A/g), phase-grid evaluation, and boundary
//! extraction by the half-maximum rule.
//!
//! Grid points are independent pure evaluations and run in parallel; rows are
//! always assembled in (hop, delta) order, so output bytes do not depend on
//! the worker count.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{half_max_boundary, GridField, Polyline};
use crate::entanglement::{all_bipartite_entropies, EntropyReport};
use crate::error::{Error, Result};
use crate::hilbert::{enumerate_basis, ExcitationBasis};
use crate::model::{build_hamiltonian, ModelParams};
use crate::observables::{order_parameters, OrderParameters};
use crate::spectra::ground_state;

/// Point spacing of a sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// One sweep axis: `steps` points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub spacing: Spacing,
}

impl Axis {
    pub fn linear(start: f64, stop: f64, steps: usize) -> Self {
        Axis {
            start,
            stop,
            steps,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(start: f64, stop: f64, steps: usize) -> Self {
        Axis {
            start,
            stop,
            steps,
            spacing: Spacing::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidSpec(format!(
                "axis needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start >= self.stop {
            return Err(Error::InvalidSpec(format!(
                "axis needs finite start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(Error::InvalidSpec(
                "log-spaced axis needs a positive start".into(),
            ));
        }
        Ok(())
    }

    /// The axis samples; endpoints are exact for linear spacing.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start * (1.0 - t) + self.stop * t,
                    Spacing::Log => {
                        let l = self.start.log10() * (1.0 - t) + self.stop.log10() * t;
                        10f64.powf(l)
                    }
                }
            })
            .collect()
    }
}

/// Hopping amplitude: a fixed value (entropy-curve sweeps) or a grid axis
/// (phase diagrams).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HopSpec {
    Fixed(f64),
    Grid(Axis),
}

impl HopSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            HopSpec::Fixed(v) => vec![*v],
            HopSpec::Grid(axis) => axis.values(),
        }
    }
}

/// Full sweep specification. `delta` and `hop` are in units of g.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub delta: Axis,
    pub hop: HopSpec,
    pub g: f64,
    pub omega_c: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.delta.validate()?;
        match &self.hop {
            HopSpec::Fixed(v) if !v.is_finite() => {
                return Err(Error::InvalidSpec("hop must be finite".into()))
            }
            HopSpec::Grid(axis) => axis.validate()?,
            _ => {}
        }
        if !self.g.is_finite() || self.g <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "g must be positive, got {}",
                self.g
            )));
        }
        if !self.omega_c.is_finite() {
            return Err(Error::InvalidSpec("omega_c must be finite".into()));
        }
        Ok(())
    }

    /// Default grid for the phase diagram: Δ/g ∈ [−30, 10] with 161 points,
    /// A/g ∈ [0.01, 20] log-spaced with 34 points.
    pub fn default_phase_grid() -> SweepSpec {
        SweepSpec {
            delta: Axis::linear(-30.0, 10.0, 161),
            hop: HopSpec::Grid(Axis::log(0.01, 20.0, 34)),
            g: 1.0,
            omega_c: 0.0,
        }
    }
}

/// Outcome of one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Ok,
    Degenerate,
    Failed,
}

impl std::fmt::Display for PointStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PointStatus::Ok => "ok",
            PointStatus::Degenerate => "degenerate",
            PointStatus::Failed => "failed",
        })
    }
}

/// Computed outputs of one grid point; absent when the solver failed there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointOutputs {
    pub energy: f64,
    pub gap: f64,
    pub degenerate: bool,
    pub entropies: EntropyReport,
    pub order: OrderParameters,
}

/// One row of a sweep, at fixed (Δ/g, A/g).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta_over_g: f64,
    pub hop_over_g: f64,
    pub status: PointStatus,
    pub outputs: Option<PointOutputs>,
}

/// Evaluate one parameter point: ground state, entropies, order parameters.
pub fn evaluate_point(
    delta_over_g: f64,
    hop_over_g: f64,
    g: f64,
    omega_c: f64,
    basis: &Arc<ExcitationBasis>,
) -> SweepRow {
    let failed = |status: PointStatus| SweepRow {
        delta_over_g,
        hop_over_g,
        status,
        outputs: None,
    };
    let params = match ModelParams::from_reduced(delta_over_g, hop_over_g, g, omega_c) {
        Ok(p) => p,
        Err(_) => return failed(PointStatus::Failed),
    };
    let h = build_hamiltonian(&params, basis);
    let result = ground_state(&h).and_then(|gs| {
        let entropies = all_bipartite_entropies(&gs)?;
        let order = order_parameters(&gs.vector);
        Ok(PointOutputs {
            energy: gs.energy,
            gap: gs.gap,
            degenerate: gs.degenerate,
            entropies,
            order,
        })
    });
    match result {
        Ok(outputs) => SweepRow {
            delta_over_g,
            hop_over_g,
            status: if outputs.degenerate {
                PointStatus::Degenerate
            } else {
                PointStatus::Ok
            },
            outputs: Some(outputs),
        },
        Err(_) => failed(PointStatus::Failed),
    }
}

/// A completed sweep: one row per grid point in (hop, delta) order.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub failed: usize,
    pub degenerate: usize,
}

/// Run the sweep. Points are evaluated in parallel on the current rayon pool;
/// the row order (and therefore any emitted file) is independent of the
/// worker count.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let basis = enumerate_basis(2);
    let hops = spec.hop.values();
    let deltas = spec.delta.values();
    let points: Vec<(f64, f64)> = hops
        .iter()
        .flat_map(|&h| deltas.iter().map(move |&d| (d, h)))
        .collect();

    let rows: Vec<SweepRow> = points
        .par_iter()
        .map(|&(d, h)| evaluate_point(d, h, spec.g, spec.omega_c, &basis))
        .collect();

    let failed = rows
        .iter()
        .filter(|r| r.status == PointStatus::Failed)
        .count();
    let degenerate = rows
        .iter()
        .filter(|r| r.status == PointStatus::Degenerate)
        .count();
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        failed,
        degenerate,
    })
}

/// Which order parameter defines a phase boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// var(n̂₁): superfluid boundary.
    TotalVariance,
    /// var(|e₁⟩⟨e₁|): polaritonic boundary.
    AtomicVariance,
}

/// Phase-diagram data: the evaluated grid plus the two half-maximum
/// boundaries.
#[derive(Debug, Clone)]
pub struct PhaseDiagram {
    pub spec: SweepSpec,
    pub delta_values: Vec<f64>,
    pub hop_values: Vec<f64>,
    pub rows: Vec<SweepRow>,
    pub failed: usize,
    pub degenerate: usize,
    pub superfluid_boundary: Vec<Polyline>,
    pub superfluid_level: f64,
    pub polaritonic_boundary: Vec<Polyline>,
    pub polaritonic_level: f64,
}

impl PhaseDiagram {
    pub fn boundary(&self, kind: BoundaryKind) -> &[Polyline] {
        match kind {
            BoundaryKind::TotalVariance => &self.superfluid_boundary,
            BoundaryKind::AtomicVariance => &self.polaritonic_boundary,
        }
    }
}

/// Grid field of one order parameter over the (delta, hop) grid. Degenerate
/// and failed points are masked out of boundary interpolation.
pub fn order_parameter_field(
    rows: &[SweepRow],
    delta_values: &[f64],
    hop_values: &[f64],
    kind: BoundaryKind,
) -> GridField {
    let cols = delta_values.len();
    let mut values = Vec::with_capacity(hop_values.len());
    let mut valid = Vec::with_capacity(hop_values.len());
    for r in 0..hop_values.len() {
        let mut vrow = Vec::with_capacity(cols);
        let mut orow = Vec::with_capacity(cols);
        for c in 0..cols {
            let row = &rows[r * cols + c];
            let v = row
                .outputs
                .map(|o| match kind {
                    BoundaryKind::TotalVariance => o.order.var_total,
                    BoundaryKind::AtomicVariance => o.order.var_atom,
                })
                .unwrap_or(f64::NAN);
            orow.push(v);
            vrow.push(row.status == PointStatus::Ok);
        }
        values.push(orow);
        valid.push(vrow);
    }
    let mut field = GridField::new(delta_values.to_vec(), hop_values.to_vec(), values);
    field.valid = valid;
    field
}

/// Evaluate the grid and extract both phase boundaries at one-half the grid
/// maximum of the respective order parameter.
pub fn phase_diagram(spec: &SweepSpec) -> Result<PhaseDiagram> {
    let grid_axis = match spec.hop {
        HopSpec::Grid(_) => Ok(()),
        HopSpec::Fixed(_) => Err(Error::InvalidSpec(
            "phase diagram needs a hop grid axis, not a fixed hop".into(),
        )),
    };
    grid_axis?;
    let result = run_sweep(spec)?;
    let delta_values = spec.delta.values();
    let hop_values = spec.hop.values();

    let sf_field = order_parameter_field(
        &result.rows,
        &delta_values,
        &hop_values,
        BoundaryKind::TotalVariance,
    );
    let (superfluid_boundary, superfluid_level) = half_max_boundary(&sf_field);
    let pol_field = order_parameter_field(
        &result.rows,
        &delta_values,
        &hop_values,
        BoundaryKind::AtomicVariance,
    );
    let (polaritonic_boundary, polaritonic_level) = half_max_boundary(&pol_field);

    Ok(PhaseDiagram {
        spec: spec.clone(),
        delta_values,
        hop_values,
        rows: result.rows,
        failed: result.failed,
        degenerate: result.degenerate,
        superfluid_boundary,
        superfluid_level,
        polaritonic_boundary,
        polaritonic_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::crossings_at_y;
    use approx::assert_abs_diff_eq;

    fn small_hop_sweep(steps: usize) -> SweepResult {
        let spec = SweepSpec {
            delta: Axis::linear(-10.0, 10.0, steps),
            hop: HopSpec::Fixed(0.01),
            g: 1.0,
            omega_c: 0.0,
        };
        run_sweep(&spec).unwrap()
    }

    #[test]
    fn axis_values_hit_endpoints_exactly() {
        let axis = Axis::linear(-10.0, 10.0, 401);
        let v = axis.values();
        assert_eq!(v.len(), 401);
        assert_eq!(v[0], -10.0);
        assert_eq!(v[400], 10.0);
        assert_abs_diff_eq!(v[1] - v[0], 0.05, epsilon = 1e-12);

        let log = Axis::log(0.01, 20.0, 34).values();
        assert_eq!(log.len(), 34);
        assert_abs_diff_eq!(log[0], 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(log[33], 20.0, epsilon = 1e-12);
    }

    #[test]
    fn spec_validation() {
        let mut spec = SweepSpec {
            delta: Axis::linear(0.0, 1.0, 2),
            hop: HopSpec::Fixed(0.1),
            g: 1.0,
            omega_c: 0.0,
        };
        assert!(spec.validate().is_ok());
        spec.delta.steps = 1;
        assert!(spec.validate().is_err());
        spec.delta.steps = 3;
        spec.delta.stop = -1.0;
        assert!(spec.validate().is_err());
        spec.delta.stop = 1.0;
        spec.g = 0.0;
        assert!(spec.validate().is_err());
        spec.g = 1.0;
        spec.hop = HopSpec::Grid(Axis::log(0.0, 1.0, 5));
        assert!(spec.validate().is_err());
    }

    #[test]
    fn two_step_sweep_is_deterministic() {
        let spec = SweepSpec {
            delta: Axis::linear(-1.0, 1.0, 2),
            hop: HopSpec::Fixed(0.5),
            g: 1.0,
            omega_c: 0.0,
        };
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a.rows.len(), 2);
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.rows[0].delta_over_g, -1.0);
        assert_eq!(a.rows[1].delta_over_g, 1.0);
    }

    #[test]
    fn rows_are_ordered_and_all_computed() {
        let spec = SweepSpec {
            delta: Axis::linear(-2.0, 2.0, 5),
            hop: HopSpec::Grid(Axis::linear(0.1, 1.0, 3)),
            g: 1.0,
            omega_c: 0.0,
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 15);
        assert_eq!(result.failed, 0);
        let hops = spec.hop.values();
        let deltas = spec.delta.values();
        for (i, row) in result.rows.iter().enumerate() {
            assert_eq!(row.hop_over_g, hops[i / 5]);
            assert_eq!(row.delta_over_g, deltas[i % 5]);
            assert!(row.outputs.is_some());
        }
    }

    #[test]
    fn worker_count_does_not_change_rows() {
        let spec = SweepSpec {
            delta: Axis::linear(-5.0, 5.0, 21),
            hop: HopSpec::Fixed(0.7),
            g: 1.0,
            omega_c: 0.0,
        };
        let pool1 = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = pool1.install(|| run_sweep(&spec)).unwrap();
        let b = pool4.install(|| run_sweep(&spec)).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn coupling_strength_sets_the_energy_unit_only() {
        // at fixed (Δ/g, A/g) and ω_c = 0, rescaling g rescales energies and
        // leaves entropies and variances untouched
        let basis = enumerate_basis(2);
        let a = evaluate_point(-3.0, 0.4, 1.0, 0.0, &basis).outputs.unwrap();
        let b = evaluate_point(-3.0, 0.4, 2.5, 0.0, &basis).outputs.unwrap();
        assert!((b.energy - 2.5 * a.energy).abs() < 1e-10);
        assert!((b.gap - 2.5 * a.gap).abs() < 1e-10);
        for ((_, x, _), (_, y, _)) in a.entropies.values().iter().zip(b.entropies.values().iter()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!((a.order.var_total - b.order.var_total).abs() < 1e-12);
    }

    #[test]
    fn non_finite_parameters_mark_the_point_failed() {
        let basis = enumerate_basis(2);
        let row = evaluate_point(f64::NAN, 0.01, 1.0, 0.0, &basis);
        assert_eq!(row.status, PointStatus::Failed);
        assert!(row.outputs.is_none());
    }

    #[test]
    fn per_row_invariants_hold() {
        let result = small_hop_sweep(81);
        for row in &result.rows {
            let o = row.outputs.expect("no failures expected");
            assert!(o.entropies.within_bounds(1e-9));
            assert_abs_diff_eq!(
                o.order.var_atom,
                o.order.mean_atom * (1.0 - o.order.mean_atom),
                epsilon = 1e-12
            );
            // two sites share the two excitations
            assert!(o.order.mean_total >= 0.0 && o.order.mean_total <= 2.0);
        }
    }

    #[test]
    fn small_hopping_sweep_shows_polaritonic_resonance() {
        // S_atom reaches ≈ 1 near Δ = 0 while S_site stays near zero there
        let result = small_hop_sweep(401);
        let near_resonance: Vec<&SweepRow> = result
            .rows
            .iter()
            .filter(|r| r.delta_over_g.abs() < 1.0)
            .collect();
        let s_atom_max = near_resonance
            .iter()
            .map(|r| r.outputs.unwrap().entropies.atom)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(s_atom_max > 0.99, "S_atom peak {s_atom_max}");
        for r in near_resonance {
            assert!(r.outputs.unwrap().entropies.site < 0.05);
        }
    }

    #[test]
    fn four_entropies_have_a_local_maximum_at_resonance() {
        // at small hopping the atom-involving cuts peak at Δ = 0 and fall off
        // on both sides before the photonic plateau takes over; the single
        // site cut has no such peak
        let result = small_hop_sweep(401);
        let curve = |get: fn(&EntropyReport) -> f64| -> Vec<f64> {
            result
                .rows
                .iter()
                .map(|r| get(&r.outputs.unwrap().entropies))
                .collect()
        };
        let local_max_near_zero = |ys: &[f64], peak: f64| -> bool {
            (1..ys.len() - 1).any(|i| {
                ys[i] > ys[i - 1]
                    && ys[i] > ys[i + 1]
                    && result.rows[i].delta_over_g.abs() <= 0.5
                    && (ys[i] - peak).abs() < 2e-3
            })
        };
        // peak heights from the dressed product |1⁻,1⁻⟩ plus O(A) hopping
        // corrections
        assert!(local_max_near_zero(&curve(|r| r.atom), 1.0));
        assert!(local_max_near_zero(&curve(|r| r.cavity), 1.0015));
        assert!(local_max_near_zero(&curve(|r| r.atoms), 1.9994));
        assert!(local_max_near_zero(&curve(|r| r.cross), 1.9994));
    }

    #[test]
    fn large_hopping_sweep_is_multipartite_near_transition() {
        // A = 10g: near −Δ ≈ A every bipartition is entangled, and the
        // atom-involving entropies peak there
        let spec = SweepSpec {
            delta: Axis::linear(-20.0, 0.0, 401),
            hop: HopSpec::Fixed(10.0),
            g: 1.0,
            omega_c: 0.0,
        };
        let result = run_sweep(&spec).unwrap();
        let atom_argmax = result
            .rows
            .iter()
            .max_by(|a, b| {
                a.outputs
                    .unwrap()
                    .entropies
                    .atom
                    .total_cmp(&b.outputs.unwrap().entropies.atom)
            })
            .unwrap()
            .delta_over_g;
        let atoms_argmax = result
            .rows
            .iter()
            .max_by(|a, b| {
                a.outputs
                    .unwrap()
                    .entropies
                    .atoms
                    .total_cmp(&b.outputs.unwrap().entropies.atoms)
            })
            .unwrap()
            .delta_over_g;
        assert!(
            (atom_argmax + 10.0).abs() <= 2.0,
            "S_atom argmax {atom_argmax}"
        );
        assert!(
            (atoms_argmax + 10.0).abs() <= 2.0,
            "S_atoms argmax {atoms_argmax}"
        );
        // multipartite indicator at the transition
        let at_transition = result
            .rows
            .iter()
            .find(|r| (r.delta_over_g + 10.0).abs() < 0.026)
            .unwrap();
        assert!(at_transition.outputs.unwrap().entropies.all_positive(0.5));
    }

    #[test]
    fn peak_tracking_follows_the_transition() {
        // dense scan: the argmax over Δ of S_site lies inside the interval
        // where var_total exceeds half its scan maximum
        let basis = enumerate_basis(2);
        for &hop in &[2.0, 5.0, 10.0] {
            let lo: f64 = -hop - 10.0;
            let hi: f64 = 5.0;
            let steps = ((hi - lo) / 1e-3).round() as usize + 1;
            let mut best_site = f64::NEG_INFINITY;
            let mut best_delta = lo;
            let mut var_max = f64::NEG_INFINITY;
            let mut samples = Vec::with_capacity(steps);
            for k in 0..steps {
                let t = k as f64 / (steps - 1) as f64;
                let delta = lo * (1.0 - t) + hi * t;
                let row = evaluate_point(delta, hop, 1.0, 0.0, &basis);
                let o = row.outputs.unwrap();
                if o.entropies.site > best_site {
                    best_site = o.entropies.site;
                    best_delta = delta;
                }
                var_max = var_max.max(o.order.var_total);
                samples.push((delta, o.order.var_total));
            }
            let half = var_max / 2.0;
            let lo_edge = samples
                .iter()
                .find(|&&(_, v)| v > half)
                .map(|&(d, _)| d)
                .unwrap();
            let hi_edge = samples
                .iter()
                .rev()
                .find(|&&(_, v)| v > half)
                .map(|&(d, _)| d)
                .unwrap();
            assert!(
                best_delta >= lo_edge && best_delta <= hi_edge,
                "A = {hop}: S_site argmax {best_delta} outside [{lo_edge}, {hi_edge}]"
            );
        }
    }

    #[test]
    fn phase_diagram_boundaries_cross_where_expected() {
        // coarse grid for speed; the acceptance suite runs the default grid
        let spec = SweepSpec {
            delta: Axis::linear(-30.0, 10.0, 81),
            hop: HopSpec::Grid(Axis::log(0.01, 20.0, 18)),
            g: 1.0,
            omega_c: 0.0,
        };
        let diagram = phase_diagram(&spec).unwrap();
        assert_eq!(diagram.rows.len(), 81 * 18);
        assert!(!diagram.superfluid_boundary.is_empty());
        assert!(!diagram.polaritonic_boundary.is_empty());

        // superfluid boundary trends along A ≈ −Δ at large hopping
        let xs = crossings_at_y(&diagram.superfluid_boundary, 10.0);
        assert!(
            xs.iter().any(|&x| (-14.0..=-7.0).contains(&x)),
            "crossings at A=10: {xs:?}"
        );
        // polaritonic boundary separates the atomic region from resonance
        let hop_floor = diagram.hop_values[0];
        let pol = crossings_at_y(&diagram.polaritonic_boundary, hop_floor);
        assert!(
            pol.iter().any(|&x| x < -1.0),
            "polaritonic crossings at small hop: {pol:?}"
        );
    }

    #[test]
    fn phase_diagram_requires_grid_axis() {
        let spec = SweepSpec {
            delta: Axis::linear(-1.0, 1.0, 3),
            hop: HopSpec::Fixed(0.1),
            g: 1.0,
            omega_c: 0.0,
        };
        assert!(matches!(phase_diagram(&spec), Err(Error::InvalidSpec(_))));
    }
}
