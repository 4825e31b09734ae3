//! Command-line interface: `point`, `sweep`, `phase` and `self-check`
//! subcommands over the sweep harness.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, ranges or config
//! files), 2 when the numerics failed at one or more points (or a self-check
//! comparison failed).
//!
//! An optional config file (`--config PATH`) holds `key = value` lines
//! mirroring the long flag names; flags given on the command line win.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::output::{self, Document};
use crate::selfcheck;
use crate::sweep::{
    evaluate_point, phase_diagram, run_sweep, Axis, HopSpec, PhaseDiagram, Spacing, SweepResult,
    SweepRow, SweepSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ccqed",
    version,
    about = "Two-site coupled-cavity QED model: ground-state entanglement and phase boundaries"
)]
struct Cli {
    /// Flat key = value config file mirroring the long flags; flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one (delta, hop) parameter point.
    Point(PointArgs),
    /// Sweep the detuning at fixed hopping (entropy curves).
    Sweep(SweepArgs),
    /// Evaluate a (delta, hop) grid and extract both phase boundaries.
    Phase(PhaseArgs),
    /// Cross-check the sector construction against the independent oracles.
    #[command(name = "self-check")]
    SelfCheck(SelfCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Detuning (omega_a - omega_c) in units of g [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Hopping amplitude in units of g [default: 0.01].
    #[arg(long, allow_hyphen_values = true)]
    hop: Option<f64>,
    /// Coupling strength; sets the overall energy unit [default: 1].
    #[arg(long)]
    g: Option<f64>,
    /// Cavity frequency; a gauge choice that shifts energies only [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    omega_c: Option<f64>,
    /// Output format [default: csv].
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Detuning range START:STOP in units of g [default: -10:10].
    #[arg(long, value_name = "START:STOP", allow_hyphen_values = true)]
    delta_range: Option<String>,
    /// Number of detuning samples, endpoints included [default: 401].
    #[arg(long)]
    steps: Option<usize>,
    /// Fixed hopping amplitude in units of g [default: 0.01].
    #[arg(long, conflicts_with = "hop_range", allow_hyphen_values = true)]
    hop: Option<f64>,
    /// Hopping range START:STOP to sweep a grid instead of a fixed value.
    #[arg(long, value_name = "START:STOP", allow_hyphen_values = true)]
    hop_range: Option<String>,
    /// Number of hopping samples when --hop-range is given [default: 11].
    #[arg(long)]
    hop_steps: Option<usize>,
    /// Space the hopping samples logarithmically.
    #[arg(long)]
    hop_log: bool,
    /// Coupling strength [default: 1].
    #[arg(long)]
    g: Option<f64>,
    /// Cavity frequency [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    omega_c: Option<f64>,
    /// Output format [default: csv].
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV (requires --out).
    #[arg(long)]
    emit_gnuplot: bool,
    /// Worker threads for the grid evaluation [default: rayon's choice].
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct PhaseArgs {
    /// Detuning range START:STOP in units of g [default: -30:10].
    #[arg(long, value_name = "START:STOP", allow_hyphen_values = true)]
    delta_range: Option<String>,
    /// Number of detuning samples [default: 161].
    #[arg(long)]
    steps: Option<usize>,
    /// Hopping range START:STOP, log-spaced [default: 0.01:20].
    #[arg(long, value_name = "START:STOP", allow_hyphen_values = true)]
    hop_range: Option<String>,
    /// Number of hopping samples [default: 34].
    #[arg(long)]
    hop_steps: Option<usize>,
    /// Coupling strength [default: 1].
    #[arg(long)]
    g: Option<f64>,
    /// Cavity frequency [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    omega_c: Option<f64>,
    /// Output format [default: csv].
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output path. Required for csv (boundary .dat files are written next
    /// to it); stdout allowed for json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the output.
    #[arg(long)]
    emit_gnuplot: bool,
    /// Worker threads for the grid evaluation [default: rayon's choice].
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct SelfCheckArgs {
    /// Check at this detuning (with --hop) instead of the built-in points.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Check at this hopping (with --delta) instead of the built-in points.
    #[arg(long, allow_hyphen_values = true)]
    hop: Option<f64>,
}

/// Parse and execute; returns the process exit code. Everything is routed
/// through this function so tests can drive the CLI in-process.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidSpec(_) | Error::InvalidConfig(_) => EXIT_USAGE,
                _ => EXIT_NUMERICAL,
            }
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let config = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => HashMap::new(),
    };
    match cli.command {
        Command::Point(args) => run_point(args, &config),
        Command::Sweep(args) => run_sweep_cmd(args, &config),
        Command::Phase(args) => run_phase(args, &config),
        Command::SelfCheck(args) => run_self_check_cmd(args, &config),
    }
}

/// `key = value` lines; '#' starts a comment; keys use the long flag names.
/// An unreadable file is a usage error, not a runtime failure.
fn parse_config_file(path: &Path) -> Result<HashMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|source| {
        Error::InvalidConfig(format!("cannot read config {}: {source}", path.display()))
    })?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidConfig(format!(
                "{}:{}: expected 'key = value', got '{raw}'",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Value resolution order: command-line flag, config file, built-in default.
struct Resolver<'a> {
    config: &'a HashMap<String, String>,
}

impl<'a> Resolver<'a> {
    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.config.get(key) {
            Some(raw) => raw.parse().map_err(|_| {
                Error::InvalidConfig(format!("config key '{key}': cannot parse '{raw}'"))
            }),
            None => Ok(default),
        }
    }

    fn get_opt<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                Error::InvalidConfig(format!("config key '{key}': cannot parse '{raw}'"))
            }),
            None => Ok(None),
        }
    }

    fn get_flag(&self, flag: bool, key: &str) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        match self.config.get(key) {
            Some(raw) => match raw.as_str() {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                other => Err(Error::InvalidConfig(format!(
                    "config key '{key}': expected a boolean, got '{other}'"
                ))),
            },
            None => Ok(false),
        }
    }
}

fn parse_range(raw: &str, what: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidSpec(format!(
            "{what}: expected START:STOP, got '{raw}'"
        )));
    }
    let start: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidSpec(format!("{what}: bad number '{}'", parts[0])))?;
    let stop: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidSpec(format!("{what}: bad number '{}'", parts[1])))?;
    Ok((start, stop))
}

fn parse_format(raw: &str) -> Result<OutputFormat> {
    match raw {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(Error::InvalidConfig(format!(
            "config key 'format': expected csv or json, got '{other}'"
        ))),
    }
}

fn resolve_format(
    flag: Option<OutputFormat>,
    config: &HashMap<String, String>,
) -> Result<OutputFormat> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match config.get("format") {
        Some(raw) => parse_format(raw),
        None => Ok(OutputFormat::Csv),
    }
}

fn emit_text(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => output::write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn install_pool<F: FnOnce() -> Result<R> + Send, R: Send>(
    threads: Option<usize>,
    f: F,
) -> Result<R> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidSpec(format!("cannot build thread pool: {e}")))?;
            pool.install(f)
        }
        None => f(),
    }
}

fn run_point(args: PointArgs, config: &HashMap<String, String>) -> Result<i32> {
    let r = Resolver { config };
    let delta = r.get(args.delta, "delta", 0.0)?;
    let hop = r.get(args.hop, "hop", 0.01)?;
    let g = r.get(args.g, "g", 1.0)?;
    let omega_c = r.get(args.omega_c, "omega-c", 0.0)?;
    let format = resolve_format(args.format, config)?;
    let out = r.get_opt(args.out, "out")?;
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::InvalidSpec(format!("g must be positive, got {g}")));
    }

    let basis = crate::hilbert::enumerate_basis(2);
    let row = evaluate_point(delta, hop, g, omega_c, &basis);
    let failed = row.status == crate::sweep::PointStatus::Failed;

    let text = match format {
        OutputFormat::Csv => output::rows_to_csv(std::slice::from_ref(&row)),
        OutputFormat::Json => point_document(row, delta, hop, g, omega_c).to_json(),
    };
    emit_text(&out, &text)?;
    Ok(if failed { EXIT_NUMERICAL } else { EXIT_OK })
}

/// A point is recorded as a degenerate one-sample sweep so the JSON schema
/// stays uniform across subcommands.
fn point_document(row: SweepRow, delta: f64, hop: f64, g: f64, omega_c: f64) -> Document {
    Document {
        schema_version: output::SCHEMA_VERSION,
        params: SweepSpec {
            delta: Axis {
                start: delta,
                stop: delta,
                steps: 1,
                spacing: Spacing::Linear,
            },
            hop: HopSpec::Fixed(hop),
            g,
            omega_c,
        },
        rows: vec![row],
        boundaries: None,
    }
}

fn build_sweep_spec(args: &SweepArgs, config: &HashMap<String, String>) -> Result<SweepSpec> {
    let r = Resolver { config };
    let delta_range = r.get_opt(args.delta_range.clone(), "delta-range")?;
    let (start, stop) = match delta_range {
        Some(raw) => parse_range(&raw, "--delta-range")?,
        None => (-10.0, 10.0),
    };
    let steps = r.get(args.steps, "steps", 401)?;
    let hop_range = r.get_opt(args.hop_range.clone(), "hop-range")?;
    let hop_log = r.get_flag(args.hop_log, "hop-log")?;
    let hop = match hop_range {
        Some(raw) => {
            let (h0, h1) = parse_range(&raw, "--hop-range")?;
            let hop_steps = r.get(args.hop_steps, "hop-steps", 11)?;
            HopSpec::Grid(Axis {
                start: h0,
                stop: h1,
                steps: hop_steps,
                spacing: if hop_log {
                    Spacing::Log
                } else {
                    Spacing::Linear
                },
            })
        }
        None => HopSpec::Fixed(r.get(args.hop, "hop", 0.01)?),
    };
    Ok(SweepSpec {
        delta: Axis::linear(start, stop, steps),
        hop,
        g: r.get(args.g, "g", 1.0)?,
        omega_c: r.get(args.omega_c, "omega-c", 0.0)?,
    })
}

fn run_sweep_cmd(args: SweepArgs, config: &HashMap<String, String>) -> Result<i32> {
    let r = Resolver { config };
    let format = resolve_format(args.format, config)?;
    let out: Option<PathBuf> = r.get_opt(args.out.clone(), "out")?;
    let emit_gnuplot = r.get_flag(args.emit_gnuplot, "emit-gnuplot")?;
    let threads = r.get_opt(args.threads, "threads")?;
    let spec = build_sweep_spec(&args, config)?;
    spec.validate()?;
    if emit_gnuplot && (out.is_none() || format != OutputFormat::Csv) {
        return Err(Error::InvalidSpec(
            "--emit-gnuplot needs --out and csv format".into(),
        ));
    }

    let result: SweepResult = install_pool(threads, || run_sweep(&spec))?;
    let text = match format {
        OutputFormat::Csv => output::rows_to_csv(&result.rows),
        OutputFormat::Json => Document::from_sweep(&result).to_json(),
    };
    emit_text(&out, &text)?;

    if emit_gnuplot {
        let csv_path = out.as_ref().expect("checked above");
        let script = output::gnuplot_sweep_script(&file_name(csv_path));
        output::write_file(&csv_path.with_extension("gp"), &script)?;
    }
    report_summary(result.failed, result.degenerate, result.rows.len());
    Ok(if result.failed > 0 {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    })
}

fn run_phase(args: PhaseArgs, config: &HashMap<String, String>) -> Result<i32> {
    let r = Resolver { config };
    let format = resolve_format(args.format, config)?;
    let out: Option<PathBuf> = r.get_opt(args.out.clone(), "out")?;
    let emit_gnuplot = r.get_flag(args.emit_gnuplot, "emit-gnuplot")?;
    let threads = r.get_opt(args.threads, "threads")?;

    let defaults = SweepSpec::default_phase_grid();
    let (d0, d1) = match r.get_opt(args.delta_range.clone(), "delta-range")? {
        Some(raw) => parse_range(&raw, "--delta-range")?,
        None => (defaults.delta.start, defaults.delta.stop),
    };
    let default_hop_axis = match defaults.hop {
        HopSpec::Grid(a) => a,
        HopSpec::Fixed(_) => unreachable!(),
    };
    let (h0, h1) = match r.get_opt(args.hop_range.clone(), "hop-range")? {
        Some(raw) => parse_range(&raw, "--hop-range")?,
        None => (default_hop_axis.start, default_hop_axis.stop),
    };
    let spec = SweepSpec {
        delta: Axis::linear(d0, d1, r.get(args.steps, "steps", defaults.delta.steps)?),
        hop: HopSpec::Grid(Axis::log(
            h0,
            h1,
            r.get(args.hop_steps, "hop-steps", default_hop_axis.steps)?,
        )),
        g: r.get(args.g, "g", 1.0)?,
        omega_c: r.get(args.omega_c, "omega-c", 0.0)?,
    };
    spec.validate()?;
    if format == OutputFormat::Csv && out.is_none() {
        return Err(Error::InvalidSpec(
            "phase with csv format needs --out for the boundary files".into(),
        ));
    }

    let diagram: PhaseDiagram = install_pool(threads, || phase_diagram(&spec))?;
    if diagram.superfluid_boundary.is_empty() || diagram.polaritonic_boundary.is_empty() {
        eprintln!("warning: an order parameter is flat on this grid; boundary is empty");
    }

    match format {
        OutputFormat::Json => emit_text(&out, &Document::from_phase(&diagram).to_json())?,
        OutputFormat::Csv => {
            let csv_path = out.as_ref().expect("checked above");
            output::write_file(csv_path, &output::rows_to_csv(&diagram.rows))?;
            let sf_path = output::sibling(csv_path, "boundary_superfluid", "dat");
            let pol_path = output::sibling(csv_path, "boundary_polaritonic", "dat");
            output::write_file(
                &sf_path,
                &output::boundary_to_dat(&diagram.superfluid_boundary, "superfluid"),
            )?;
            output::write_file(
                &pol_path,
                &output::boundary_to_dat(&diagram.polaritonic_boundary, "polaritonic"),
            )?;
            if emit_gnuplot {
                let script =
                    output::gnuplot_phase_script(&file_name(&sf_path), &file_name(&pol_path));
                output::write_file(&csv_path.with_extension("gp"), &script)?;
            }
        }
    }
    report_summary(diagram.failed, diagram.degenerate, diagram.rows.len());
    Ok(if diagram.failed > 0 {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    })
}

fn run_self_check_cmd(args: SelfCheckArgs, config: &HashMap<String, String>) -> Result<i32> {
    let r = Resolver { config };
    let delta = r.get_opt(args.delta, "delta")?;
    let hop = r.get_opt(args.hop, "hop")?;
    let points: Vec<(f64, f64)> = match (delta, hop) {
        (Some(d), Some(h)) => vec![(d, h)],
        (Some(d), None) => vec![(d, 0.01)],
        (None, Some(h)) => vec![(0.0, h)],
        (None, None) => selfcheck::DEFAULT_POINTS.to_vec(),
    };

    println!(
        "oracle cross-checks at {} parameter point(s):",
        points.len()
    );
    let results = selfcheck::run_self_check(&points);
    let mut all_passed = true;
    for r in &results {
        all_passed &= r.passed;
        println!(
            "{:<24} {}  {}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.detail
        );
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_NUMERICAL })
}

fn report_summary(failed: usize, degenerate: usize, total: usize) {
    if failed > 0 {
        eprintln!("warning: {failed} of {total} points failed");
    }
    if degenerate > 0 {
        eprintln!("note: {degenerate} of {total} points flagged degenerate");
    }
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
