//! Command-line front end: flag handling, optional key=value configuration
//! files, and the CSV/JSON formats shared by every subcommand.
//!
//! Exit codes: 0 on success, 2 for bad flags or parameter-domain violations,
//! 3 for I/O failures (including malformed input files), 4 for degenerate
//! data such as a constant series in `estimate`.
//!
//! Series CSV schema: header `t,i,value`, one row per observation, `t` the
//! segment and `i` the phase within it. Grid CSV schema: header
//! `alpha,theta,value`, row-major over alpha then theta; cells the reference
//! tables leave blank are emitted as the literal `NA`.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analytic::{self, Variant};
use crate::dgp::{self, DgpSpec, Model, SegmentedSeries};
use crate::error::Error;
use crate::estimate;
use crate::grids::{self, Family, ParamGrid};
use crate::interp;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Domain(#[from] Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(Error::DegenerateSeries(_)) => 4,
            CliError::Domain(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Malformed(_) => 3,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Deterministic variance-ratio toolkit for segmented and interpolated series.
#[derive(Debug, Parser)]
#[command(name = "vratio", version, about)]
struct Cli {
    /// Key=value file supplying defaults for any long flag of the subcommand;
    /// flags given on the command line win. Environment variables are never
    /// consulted.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form short/long variances and variance ratio at one point.
    Analytic(AnalyticCmd),
    /// Simulate a segmented path and write it as a series CSV.
    Simulate(SimulateCmd),
    /// Interpolate the benchmarks of a series CSV into a finer series.
    Interpolate(InterpolateCmd),
    /// Estimate variance ratios from a series CSV.
    Estimate(EstimateCmd),
    /// Monte Carlo check of the sample variance ratio against the closed form.
    Mc(McCmd),
    /// Emit the reference variance-ratio table pair as two grid CSVs.
    Table(TableCmd),
    /// Emit a variance-ratio surface over the open coefficient square.
    Surface(SurfaceCmd),
}

/// Flags shared by every command that needs a process specification.
#[derive(Debug, Args)]
struct DgpArgs {
    /// Process family: ar1 | ma1 | arma11 | rw | rw-arma11.
    #[arg(long)]
    model: Option<Model>,
    /// AR coefficient, |alpha| < 1; must be 0 for ma1 and rw.
    #[arg(long)]
    alpha: Option<f64>,
    /// MA coefficient, |theta| < 1; must be 0 for ar1 and rw.
    #[arg(long)]
    theta: Option<f64>,
    /// Drift per sub-period; only the random-walk families may set it.
    #[arg(long)]
    mu: Option<f64>,
    /// Innovation variance (default 1).
    #[arg(long)]
    sigma2: Option<f64>,
}

impl DgpArgs {
    fn resolve(&self, cfg: &Config) -> Result<DgpSpec, CliError> {
        let model = pick(self.model, cfg, "model")?
            .ok_or_else(|| usage("--model is required (ar1|ma1|arma11|rw|rw-arma11)"))?;
        let spec = DgpSpec {
            model,
            alpha: pick(self.alpha, cfg, "alpha")?.unwrap_or(0.0),
            theta: pick(self.theta, cfg, "theta")?.unwrap_or(0.0),
            mu: pick(self.mu, cfg, "mu")?.unwrap_or(0.0),
            sigma2: pick(self.sigma2, cfg, "sigma2")?.unwrap_or(1.0),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct AnalyticCmd {
    #[command(flatten)]
    dgp: DgpArgs,
    /// Segment length (sub-periods per benchmark interval), s >= 2.
    #[arg(long)]
    s: Option<u32>,
    /// Which series the result describes: original | interpolated.
    #[arg(long)]
    variant: Option<Variant>,
    /// Also report the phase-i long variance of the interpolated series.
    #[arg(long)]
    phase: Option<u32>,
    /// Output format: json | csv (default json).
    #[arg(long)]
    format: Option<ReportFormat>,
}

#[derive(Debug, Args)]
struct SimulateCmd {
    #[command(flatten)]
    dgp: DgpArgs,
    /// Segment length, s >= 1.
    #[arg(long)]
    s: Option<usize>,
    /// Number of segments to simulate.
    #[arg(long)]
    segments: Option<usize>,
    /// RNG seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Transient steps discarded before the first retained observation;
    /// defaults to the model-dependent policy.
    #[arg(long)]
    burn_in: Option<usize>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InterpolateCmd {
    /// Input series CSV; its benchmarks anchor the interpolation.
    #[arg(long, value_name = "FILE")]
    r#in: Option<PathBuf>,
    /// Segment length of the interpolated output, s >= 2.
    #[arg(long)]
    s: Option<usize>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EstimateCmd {
    /// Input series CSV.
    #[arg(long, value_name = "FILE")]
    r#in: Option<PathBuf>,
    /// Displacement of the long variance (default: the segment length of the
    /// input).
    #[arg(long)]
    k: Option<usize>,
    /// Skip demeaning the differences (demeaning is on by default).
    #[arg(long)]
    no_demean: bool,
    /// Include per-phase variances of same-phase segment differences.
    #[arg(long)]
    phase_report: bool,
}

#[derive(Debug, Args)]
struct McCmd {
    #[command(flatten)]
    dgp: DgpArgs,
    /// Segment length, s >= 2.
    #[arg(long)]
    s: Option<usize>,
    /// original | interpolated.
    #[arg(long)]
    variant: Option<Variant>,
    /// Number of independent replications (default 100).
    #[arg(long)]
    reps: Option<usize>,
    /// Segments per replication (default 10000).
    #[arg(long)]
    segments: Option<usize>,
    /// Master seed; per-replication seeds derive from it (default 0).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct TableCmd {
    /// stationary | nonstationary.
    #[arg(long)]
    family: Option<Family>,
    /// Segment length, 4 or 10.
    #[arg(long)]
    s: Option<u32>,
    /// Output file for the original-series ratios.
    #[arg(long, value_name = "FILE")]
    out_vy: Option<PathBuf>,
    /// Output file for the interpolated-series ratios.
    #[arg(long, value_name = "FILE")]
    out_vx: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SurfaceCmd {
    /// stationary | nonstationary.
    #[arg(long)]
    family: Option<Family>,
    /// original | interpolated.
    #[arg(long)]
    variant: Option<Variant>,
    /// Segment length, s >= 2.
    #[arg(long)]
    s: Option<u32>,
    /// Grid resolution per axis (default 99).
    #[arg(long)]
    grid_n: Option<usize>,
    /// Distance kept from the +-1 boundary (default 0.01).
    #[arg(long)]
    margin: Option<f64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy)]
enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format `{other}` (expected json|csv)")),
        }
    }
}

/// Key=value defaults loaded from `--config`. Keys are the long option names
/// without the leading dashes; `#` starts a comment.
#[derive(Debug)]
struct Config(HashMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            for (lineno, line) in fs::read_to_string(path)?.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    usage(format!("config line {}: expected key=value, got `{line}`", lineno + 1))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Config(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| usage(format!("config key `{key}`: {e}"))),
        }
    }

    fn get_flag(&self, key: &str) -> Result<bool, CliError> {
        Ok(self.get::<bool>(key)?.unwrap_or(false))
    }
}

fn pick<T: FromStr>(cli: Option<T>, cfg: &Config, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    match cli {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("--{flag} is required")))
}

/// Parse the process arguments and dispatch; returns the process exit code.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Analytic(cmd) => cmd_analytic(cmd, &cfg),
        Command::Simulate(cmd) => cmd_simulate(cmd, &cfg),
        Command::Interpolate(cmd) => cmd_interpolate(cmd, &cfg),
        Command::Estimate(cmd) => cmd_estimate(cmd, &cfg),
        Command::Mc(cmd) => cmd_mc(cmd, &cfg),
        Command::Table(cmd) => cmd_table(cmd, &cfg),
        Command::Surface(cmd) => cmd_surface(cmd, &cfg),
    }
}

#[derive(Serialize)]
struct AnalyticReport {
    model: Model,
    alpha: f64,
    theta: f64,
    mu: f64,
    sigma2: f64,
    variant: Variant,
    s: u32,
    k: u32,
    short_var: f64,
    long_var: f64,
    vr: f64,
    provenance: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase_var: Option<f64>,
}

fn cmd_analytic(cmd: AnalyticCmd, cfg: &Config) -> Result<(), CliError> {
    let spec = cmd.dgp.resolve(cfg)?;
    let s = required(pick(cmd.s, cfg, "s")?, "s")?;
    let variant = required(pick(cmd.variant, cfg, "variant")?, "variant")?;
    let format = pick(cmd.format, cfg, "format")?.unwrap_or(ReportFormat::Json);
    let phase = pick(cmd.phase, cfg, "phase")?;

    let summary = analytic::variance_ratio(&spec, variant, s)?;
    let phase_var = match phase {
        Some(i) => Some(analytic::long_var_phase(&spec, s, i)?),
        None => None,
    };
    let report = AnalyticReport {
        model: spec.model,
        alpha: spec.alpha,
        theta: spec.theta,
        mu: spec.mu,
        sigma2: spec.sigma2,
        variant,
        s,
        k: summary.k,
        short_var: summary.short_var,
        long_var: summary.long_var,
        vr: summary.vr,
        provenance: "analytic",
        phase,
        phase_var,
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        ReportFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        ReportFormat::Csv => {
            let mut header = vec![
                "model", "alpha", "theta", "mu", "sigma2", "variant", "s", "k", "short_var",
                "long_var", "vr", "provenance",
            ];
            let mut row = vec![
                report.model.name().to_string(),
                fmt_f64(report.alpha),
                fmt_f64(report.theta),
                fmt_f64(report.mu),
                fmt_f64(report.sigma2),
                report.variant.name().to_string(),
                report.s.to_string(),
                report.k.to_string(),
                fmt_f64(report.short_var),
                fmt_f64(report.long_var),
                fmt_f64(report.vr),
                report.provenance.to_string(),
            ];
            if let (Some(p), Some(pv)) = (report.phase, report.phase_var) {
                header.extend(["phase", "phase_var"]);
                row.push(p.to_string());
                row.push(fmt_f64(pv));
            }
            let mut wtr = csv::Writer::from_writer(out);
            wtr.write_record(&header)?;
            wtr.write_record(&row)?;
            wtr.flush()?;
        }
    }
    Ok(())
}

fn cmd_simulate(cmd: SimulateCmd, cfg: &Config) -> Result<(), CliError> {
    let spec = cmd.dgp.resolve(cfg)?;
    let s = required(pick(cmd.s, cfg, "s")?, "s")?;
    let segments = required(pick(cmd.segments, cfg, "segments")?, "segments")?;
    let seed = pick(cmd.seed, cfg, "seed")?.unwrap_or(0);
    let burn_in =
        pick(cmd.burn_in, cfg, "burn-in")?.unwrap_or_else(|| dgp::default_burn_in(&spec));
    let series = dgp::simulate(&spec, s, segments, seed, burn_in)?;
    with_output(pick(cmd.out, cfg, "out")?, |w| write_series_csv(w, &series))
}

fn cmd_interpolate(cmd: InterpolateCmd, cfg: &Config) -> Result<(), CliError> {
    let input = required(pick(cmd.r#in, cfg, "in")?, "in")?;
    let s = required(pick(cmd.s, cfg, "s")?, "s")?;
    let series = read_series_csv(fs::File::open(&input)?)?;
    let interpolated = interp::interpolate(&series.benchmarks(), s)?;
    with_output(pick(cmd.out, cfg, "out")?, |w| write_series_csv(w, &interpolated))
}

#[derive(Serialize)]
struct EstimateReport {
    model: Option<Model>,
    variant: Option<Variant>,
    s: usize,
    k: usize,
    n_obs: usize,
    short_var: f64,
    long_var: f64,
    vr: f64,
    provenance: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase_vars: Option<Vec<f64>>,
}

fn cmd_estimate(cmd: EstimateCmd, cfg: &Config) -> Result<(), CliError> {
    let input = required(pick(cmd.r#in, cfg, "in")?, "in")?;
    let series = read_series_csv(fs::File::open(&input)?)?;
    let k = pick(cmd.k, cfg, "k")?.unwrap_or_else(|| series.s());
    let demean = !(cmd.no_demean || cfg.get_flag("no-demean")?);
    let phase_report = cmd.phase_report || cfg.get_flag("phase-report")?;

    let report = EstimateReport {
        model: None,
        variant: None,
        s: series.s(),
        k,
        n_obs: series.values().len(),
        short_var: estimate::diff_var(&series, 1, demean)?,
        long_var: estimate::diff_var(&series, k, demean)?,
        vr: estimate::vr_hat(&series, k, demean)?,
        provenance: "empirical",
        phase_vars: if phase_report { Some(estimate::phase_vars(&series)?) } else { None },
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn cmd_mc(cmd: McCmd, cfg: &Config) -> Result<(), CliError> {
    let spec = cmd.dgp.resolve(cfg)?;
    let s = required(pick(cmd.s, cfg, "s")?, "s")?;
    let variant = required(pick(cmd.variant, cfg, "variant")?, "variant")?;
    let reps = pick(cmd.reps, cfg, "reps")?.unwrap_or(100);
    let segments = pick(cmd.segments, cfg, "segments")?.unwrap_or(10_000);
    let seed = pick(cmd.seed, cfg, "seed")?.unwrap_or(0);
    let report = estimate::mc_compare(&spec, s, variant, reps, segments, seed)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn cmd_table(cmd: TableCmd, cfg: &Config) -> Result<(), CliError> {
    let family = required(pick(cmd.family, cfg, "family")?, "family")?;
    let s = required(pick(cmd.s, cfg, "s")?, "s")?;
    let out_vy = required(pick(cmd.out_vy, cfg, "out-vy")?, "out-vy")?;
    let out_vx = required(pick(cmd.out_vx, cfg, "out-vx")?, "out-vx")?;
    let (vy, vx) = grids::table(family, s)?;
    write_grid_csv(fs::File::create(&out_vy)?, &vy, true)?;
    write_grid_csv(fs::File::create(&out_vx)?, &vx, true)?;
    Ok(())
}

fn cmd_surface(cmd: SurfaceCmd, cfg: &Config) -> Result<(), CliError> {
    let family = required(pick(cmd.family, cfg, "family")?, "family")?;
    let variant = required(pick(cmd.variant, cfg, "variant")?, "variant")?;
    let s = required(pick(cmd.s, cfg, "s")?, "s")?;
    let n = pick(cmd.grid_n, cfg, "grid-n")?.unwrap_or(99);
    let margin = pick(cmd.margin, cfg, "margin")?.unwrap_or(0.01);
    let grid = grids::surface(family, variant, s, n, margin)?;
    with_output(pick(cmd.out, cfg, "out")?, |w| write_grid_csv(w, &grid, false))
}

fn with_output(
    path: Option<PathBuf>,
    write: impl FnOnce(Box<dyn Write>) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        Some(p) => write(Box::new(fs::File::create(p)?)),
        None => write(Box::new(io::stdout().lock())),
    }
}

/// Shortest round-trip decimal representation; reading the CSV back recovers
/// the identical bits.
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn write_series_csv<W: Write>(w: W, series: &SegmentedSeries) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["t", "i", "value"])?;
    let s = series.s();
    for (idx, v) in series.values().iter().enumerate() {
        let t = series.origin_segment() + idx / s;
        let i = idx % s + 1;
        wtr.write_record([t.to_string(), i.to_string(), fmt_f64(*v)])?;
    }
    wtr.flush()?;
    Ok(())
}

fn read_series_csv<R: Read>(r: R) -> Result<SegmentedSeries, CliError> {
    let mut rdr = csv::Reader::from_reader(r);
    if rdr.headers()?.iter().collect::<Vec<_>>() != ["t", "i", "value"] {
        return Err(CliError::Malformed("series CSV must carry the header t,i,value".into()));
    }
    let mut rows: Vec<(usize, usize, f64)> = Vec::new();
    for record in rdr.records() {
        let record = record?;
        if record.len() != 3 {
            return Err(CliError::Malformed(format!(
                "series CSV row {} does not have 3 fields",
                rows.len() + 2
            )));
        }
        let parse = |idx: usize| -> Result<&str, CliError> { Ok(record.get(idx).unwrap()) };
        let t = parse(0)?.parse::<usize>();
        let i = parse(1)?.parse::<usize>();
        let v = parse(2)?.parse::<f64>();
        match (t, i, v) {
            (Ok(t), Ok(i), Ok(v)) => rows.push((t, i, v)),
            _ => {
                return Err(CliError::Malformed(format!(
                    "series CSV row {} is not numeric",
                    rows.len() + 2
                )))
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::Malformed("series CSV has no data rows".into()));
    }
    let s = rows.iter().map(|r| r.1).max().unwrap();
    if rows.len() % s != 0 {
        return Err(CliError::Malformed(format!(
            "series CSV holds {} rows, not a multiple of the segment length {s}",
            rows.len()
        )));
    }
    let origin = rows[0].0;
    for (idx, &(t, i, _)) in rows.iter().enumerate() {
        let (want_t, want_i) = (origin + idx / s, idx % s + 1);
        if t != want_t || i != want_i {
            return Err(CliError::Malformed(format!(
                "series CSV row {}: expected (t, i) = ({want_t}, {want_i}), got ({t}, {i})",
                idx + 2
            )));
        }
    }
    let values = rows.into_iter().map(|r| r.2).collect();
    Ok(SegmentedSeries::new(values, s, origin)?)
}

fn write_grid_csv<W: Write>(w: W, grid: &ParamGrid, two_dp: bool) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["alpha", "theta", "value"])?;
    for i in 0..grid.n_rows() {
        for j in 0..grid.n_cols() {
            let cell = if grid.is_na(i, j) {
                "NA".to_string()
            } else if two_dp {
                format!("{:.2}", grids::round2(grid.value(i, j)))
            } else {
                fmt_f64(grid.value(i, j))
            };
            wtr.write_record([fmt_f64(grid.alphas[i]), fmt_f64(grid.thetas[j]), cell])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}
