//! Emission of sweep and phase-diagram results: CSV with a fixed 15-column
//! header, schema-versioned JSON, gnuplot-ready boundary files, and plot
//! scripts.
//!
//! CSV numbers use a 17-significant-digit scientific format that reparses to
//! the identical f64, with '.' as the decimal separator; files are
//! newline-terminated. Identical inputs produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::boundary::Polyline;
use crate::error::{Error, Result};
use crate::sweep::{PhaseDiagram, SweepResult, SweepRow, SweepSpec};

/// Schema version of the JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// The fixed CSV column contract.
pub const CSV_HEADER: &str = "delta_over_g,hop_over_g,energy,gap,degenerate,S_site,S_atom,S_cavity,S_atoms,S_cross,mean_n1,var_n1,mean_na1,var_na1,status";

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render rows under the fixed header; ends with a newline.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 256);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let f = format_number;
        match &row.outputs {
            Some(o) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    f(row.delta_over_g),
                    f(row.hop_over_g),
                    f(o.energy),
                    f(o.gap),
                    u8::from(o.degenerate),
                    f(o.entropies.site),
                    f(o.entropies.atom),
                    f(o.entropies.cavity),
                    f(o.entropies.atoms),
                    f(o.entropies.cross),
                    f(o.order.mean_total),
                    f(o.order.var_total),
                    f(o.order.mean_atom),
                    f(o.order.var_atom),
                    row.status,
                );
            }
            None => {
                let nan = f(f64::NAN);
                let _ = writeln!(
                    out,
                    "{},{},{nan},{nan},0,{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{}",
                    f(row.delta_over_g),
                    f(row.hop_over_g),
                    row.status,
                );
            }
        }
    }
    out
}

/// One extracted level set with the level it was drawn at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySet {
    pub level: f64,
    pub polylines: Vec<Polyline>,
}

/// Both phase boundaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Boundaries {
    pub superfluid: BoundarySet,
    pub polaritonic: BoundarySet,
}

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub params: SweepSpec,
    pub rows: Vec<SweepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundaries: Option<Boundaries>,
}

impl Document {
    pub fn from_sweep(result: &SweepResult) -> Document {
        Document {
            schema_version: SCHEMA_VERSION,
            params: result.spec.clone(),
            rows: result.rows.clone(),
            boundaries: None,
        }
    }

    pub fn from_phase(diagram: &PhaseDiagram) -> Document {
        Document {
            schema_version: SCHEMA_VERSION,
            params: diagram.spec.clone(),
            rows: diagram.rows.clone(),
            boundaries: Some(Boundaries {
                superfluid: BoundarySet {
                    level: diagram.superfluid_level,
                    polylines: diagram.superfluid_boundary.clone(),
                },
                polaritonic: BoundarySet {
                    level: diagram.polaritonic_level,
                    polylines: diagram.polaritonic_boundary.clone(),
                },
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// Gnuplot-friendly polyline data: `delta hop` pairs, polylines separated by
/// blank lines.
pub fn boundary_to_dat(polylines: &[Polyline], label: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {label} phase boundary: delta_over_g hop_over_g");
    for (i, line) in polylines.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for &(x, y) in line {
            let _ = writeln!(out, "{} {}", format_number(x), format_number(y));
        }
    }
    out
}

/// Gnuplot script plotting the five entropy curves of a fixed-hop sweep.
pub fn gnuplot_sweep_script(csv_name: &str) -> String {
    format!(
        r#"# entropy curves vs detuning; render with: gnuplot this_file
set datafile separator ','
set key autotitle columnhead
set xlabel 'delta / g'
set ylabel 'entropy [bits]'
set grid
plot '{csv_name}' using 1:6 with lines title 'S_{{site}}', \
     '' using 1:7 with lines title 'S_{{atom}}', \
     '' using 1:8 with lines title 'S_{{cavity}}', \
     '' using 1:9 with lines title 'S_{{atoms}}', \
     '' using 1:10 with lines title 'S_{{cross}}'
pause -1 'press enter to close'
"#
    )
}

/// Gnuplot script plotting the two half-maximum phase boundaries over the
/// (Δ/g, A/g) plane. The four regions (atomic insulator lower left,
/// polaritonic insulator lower center, photonic superfluid right/top,
/// polaritonic superfluid along the total-variance boundary at large
/// hopping) are labeled for orientation.
pub fn gnuplot_phase_script(superfluid_dat: &str, polaritonic_dat: &str) -> String {
    format!(
        r#"# phase diagram boundaries; render with: gnuplot this_file
set xlabel 'delta / g'
set ylabel 'hop / g'
set logscale y
set grid
set label 1 'atomic insulator' at -25, 0.1
set label 2 'polaritonic insulator' at -3, 0.03
set label 3 'photonic superfluid' at 4, 3
set label 4 'polaritonic superfluid' at -14, 8
plot '{superfluid_dat}' with lines lw 2 title 'var(n_1) half-maximum', \
     '{polaritonic_dat}' with lines lw 2 title 'var(n_{{a,1}}) half-maximum'
pause -1 'press enter to close'
"#
    )
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Write text to a file, carrying the path in any error.
pub fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(io_err(path))
}

/// Sibling path `<stem>_<suffix>.<ext>` next to `path`.
pub fn sibling(path: &Path, suffix: &str, ext: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}_{suffix}.{ext}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_sweep, Axis, HopSpec, SweepSpec};

    fn tiny_sweep() -> SweepResult {
        let spec = SweepSpec {
            delta: Axis::linear(-1.0, 1.0, 3),
            hop: HopSpec::Fixed(0.5),
            g: 1.0,
            omega_c: 0.0,
        };
        run_sweep(&spec).unwrap()
    }

    #[test]
    fn csv_has_header_and_one_line_per_row() {
        let result = tiny_sweep();
        let csv = rows_to_csv(&result.rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(csv.ends_with('\n'));
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 15);
            assert!(line.ends_with(",ok"));
        }
    }

    #[test]
    fn csv_numbers_round_trip() {
        let result = tiny_sweep();
        let csv = rows_to_csv(&result.rows);
        let first = csv.lines().nth(1).unwrap();
        let fields: Vec<&str> = first.split(',').collect();
        let energy: f64 = fields[2].parse().unwrap();
        assert_eq!(energy, result.rows[0].outputs.unwrap().energy);
        let delta: f64 = fields[0].parse().unwrap();
        assert_eq!(delta, -1.0);
    }

    #[test]
    fn failed_rows_render_with_status_and_nan_fields() {
        let row = crate::sweep::SweepRow {
            delta_over_g: 2.0,
            hop_over_g: 0.5,
            status: crate::sweep::PointStatus::Failed,
            outputs: None,
        };
        let csv = rows_to_csv(std::slice::from_ref(&row));
        let line = csv.lines().nth(1).unwrap();
        assert_eq!(line.split(',').count(), 15);
        assert!(line.ends_with(",failed"));
        assert!(line.contains("NaN"));
    }

    #[test]
    fn json_round_trips_through_schema() {
        let result = tiny_sweep();
        let doc = Document::from_sweep(&result);
        let json = doc.to_json();
        let back: Document = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.schema_version, SCHEMA_VERSION);
        assert_eq!(back.rows.len(), 3);
    }

    #[test]
    fn boundary_dat_separates_polylines() {
        let lines = vec![vec![(0.0, 1.0), (1.0, 2.0)], vec![(5.0, 5.0), (6.0, 6.0)]];
        let dat = boundary_to_dat(&lines, "test");
        assert!(dat.starts_with("# test"));
        assert_eq!(dat.matches("\n\n").count(), 1);
        assert_eq!(
            dat.lines()
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .count(),
            4
        );
    }

    #[test]
    fn sibling_path_naming() {
        let p = Path::new("/tmp/run/phase.csv");
        assert_eq!(
            sibling(p, "boundary_superfluid", "dat"),
            Path::new("/tmp/run/phase_boundary_superfluid.dat")
        );
    }
}
