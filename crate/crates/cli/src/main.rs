//! `abflux`: spectra, sweeps, verification suites and Green-function values
//! for Aharonov-Bohm Hamiltonians in a homogeneous magnetic field.

mod config;
mod emit;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use abflux::abmodel::{green_closed, green_series};
use abflux::spectrum::{full_spectrum, sweep};
use abflux::verify::{self, Suite};
use abflux::{ModelParams, ModelParams64, SectorIndex, C64};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use config::{boundary_json, parse_direction, parse_t_range, BcArgs};
use emit::{csv_document, diagnostic, fmt, json_document, num, JSON_SCHEMA};

const SCHEMA_HELP: &str = concat!(
    "Exit codes: 0 success, 1 configuration error, 2 root count mismatch or numerical failure, 3 verification failure.\n",
    "Errors are written to stderr as {\"error\": {\"kind\", \"message\", \"exit_code\"}}.\n\n",
    "JSON output schema (--format json):\n"
);

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numerical(abflux::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0} verification checks failed")]
    Verify(usize),
    #[error("{failed} of {total} t values failed; first: {first}")]
    Sweep { failed: usize, total: usize, first: String },
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numerical(abflux::Error::CountMismatch { .. }) => "count_mismatch",
            CliError::Numerical(_) => "numerical",
            CliError::Io(_) => "io",
            CliError::Verify(_) => "verify",
            CliError::Sweep { .. } => "sweep",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) | CliError::Sweep { .. } => 2,
            CliError::Verify(_) => 3,
        }
    }
}

impl From<abflux::Error> for CliError {
    fn from(e: abflux::Error) -> Self {
        match e {
            abflux::Error::InvalidArgument(msg) => CliError::Config(msg),
            e @ abflux::Error::DeterminantZero { .. } => CliError::Config(e.to_string()),
            e => CliError::Numerical(e),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "abflux", version, about, after_long_help = format!("{SCHEMA_HELP}{JSON_SCHEMA}"))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Complete point spectrum up to --lambda-max for one boundary condition.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Critical eigenvalue branches along the line (xi, eta, zeta) = (a t, b t, |c t|).
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Run an invariant suite; exits 3 if any check fails.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Green-function kernel of one angular sector, closed form and optional Laguerre sum.
    #[command(allow_negative_numbers = true)]
    Green(GreenArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
struct Common {
    /// Flux fraction in ]0, 1[.
    #[arg(long, default_value_t = 0.3)]
    alpha: f64,
    /// Magnetic field strength, > 0.
    #[arg(long = "B", default_value_t = 1.0)]
    b: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn params(&self) -> Result<ModelParams64, CliError> {
        Ok(ModelParams::new(self.alpha, self.b)?)
    }

    fn config(&self, command: &str) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("command".into(), json!(command));
        m.insert("alpha".into(), num(self.alpha));
        m.insert("B".into(), num(self.b));
        m
    }

    fn write(&self, text: &str) -> Result<(), CliError> {
        match &self.output {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    bc: BcArgs,
    /// Largest eigenvalue reported.
    #[arg(long = "lambda-max", default_value_t = 10.0)]
    lambda_max: f64,
    /// Landau-level multiplicities count the sectors -2 .. -(m_cap+1).
    #[arg(long = "m-cap", default_value_t = 3)]
    m_cap: u32,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// Direction a,b,c in (xi, eta, zeta) space.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_direction)]
    dir: (f64, f64, f64),
    /// Parameter grid lo:hi:n with n >= 2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_t_range, default_value = "-5:5:501")]
    t: (f64, f64, usize),
    /// Lower edge of the eigenvalue window [default: -4 B].
    #[arg(long = "lambda-min")]
    lambda_min: Option<f64>,
    /// Upper edge of the eigenvalue window [default: 10 B].
    #[arg(long = "lambda-max")]
    lambda_max: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// tables, series, green, unitary, digamma, gaps, specfun or all.
    #[arg(default_value = "all", value_parser = |s: &str| s.parse::<Suite>().map_err(|e| e.to_string()))]
    suite: Suite,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct GreenArgs {
    #[command(flatten)]
    common: Common,
    /// Angular sector m.
    #[arg(long)]
    m: i64,
    /// Real part of the spectral parameter.
    #[arg(long = "z-re")]
    z_re: f64,
    /// Imaginary part of the spectral parameter.
    #[arg(long = "z-im", default_value_t = 0.0)]
    z_im: f64,
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    r2: f64,
    /// Also sum this many Laguerre terms and report the relative difference.
    #[arg(long)]
    terms: Option<usize>,
}

fn no_svg(format: Format, command: &str) -> Result<(), CliError> {
    match format {
        Format::Svg => Err(CliError::Config(format!("--format svg is only available for sweep, not {command}"))),
        _ => Ok(()),
    }
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<(), CliError> {
    no_svg(a.common.format, "spectrum")?;
    let p = a.common.params()?;
    let spec = a.bc.boundary()?;
    let records = full_spectrum(&spec, &p, a.lambda_max, a.m_cap)?;
    let text = match a.common.format {
        Format::Json => {
            let mut config = a.common.config("spectrum");
            config.insert("boundary".into(), boundary_json(&spec));
            config.insert("lambda_max".into(), num(a.lambda_max));
            config.insert("m_cap".into(), json!(a.m_cap));
            let recs = records
                .iter()
                .map(|r| {
                    json!({
                        "lambda": num(r.lambda),
                        "z": r.z.map_or(Value::Null, num),
                        "source": r.source.to_string(),
                        "sectors": r.sectors.iter().map(|s| s.0).collect::<Vec<_>>(),
                        "multiplicity": r.multiplicity,
                        "truncated": r.truncated,
                    })
                })
                .collect();
            let note = format!("Landau-level multiplicities count only the sectors -2 .. -{}", a.m_cap + 1);
            json_document(Value::Object(config), recs, vec![diagnostic("info", note)])
        }
        _ => csv_document(
            &["lambda", "z", "source", "sectors", "multiplicity"],
            records.iter().map(|r| {
                let sectors: Vec<String> = r.sectors.iter().map(|s| s.0.to_string()).collect();
                vec![
                    fmt(r.lambda),
                    r.z.map(fmt).unwrap_or_default(),
                    r.source.to_string(),
                    sectors.join(";"),
                    r.multiplicity.to_string(),
                ]
            }),
        )?,
    };
    a.common.write(&text)
}

fn cmd_sweep(a: &SweepArgs) -> Result<(), CliError> {
    let p = a.common.params()?;
    let window = (a.lambda_min.unwrap_or(-4.0 * a.common.b), a.lambda_max.unwrap_or(10.0 * a.common.b));
    let table = sweep(a.dir, a.t, &p, window)?;
    let rows = || {
        table
            .t_values
            .iter()
            .enumerate()
            .flat_map(|(i, t)| table.branches.iter().filter_map(move |br| br.lambda[i].map(|l| (*t, br.id, l))))
    };
    let text = match a.common.format {
        Format::Svg => svg::render_sweep(&table),
        Format::Json => {
            let mut config = a.common.config("sweep");
            config.insert("direction".into(), json!([num(a.dir.0), num(a.dir.1), num(a.dir.2)]));
            config.insert("t_range".into(), json!({"lo": num(a.t.0), "hi": num(a.t.1), "n": a.t.2}));
            config.insert("lambda_window".into(), json!([num(window.0), num(window.1)]));
            let recs = rows().map(|(t, id, l)| json!({"t": num(t), "branch_id": id, "lambda": num(l)})).collect();
            let diags = table.failures.iter().map(|f| diagnostic("error", format!("t = {}: {}", fmt(f.t), f.message))).collect();
            json_document(Value::Object(config), recs, diags)
        }
        Format::Csv => {
            csv_document(&["t", "branch_id", "lambda"], rows().map(|(t, id, l)| vec![fmt(t), id.to_string(), fmt(l)]))?
        }
    };
    a.common.write(&text)?;
    match table.failures.first() {
        Some(f) => Err(CliError::Sweep {
            failed: table.failures.len(),
            total: table.t_values.len(),
            first: format!("t = {}: {}", fmt(f.t), f.message),
        }),
        None => Ok(()),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), CliError> {
    no_svg(a.common.format, "verify")?;
    let p = a.common.params()?;
    let checks = verify::run(a.suite, &p);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = match a.common.format {
        Format::Json => {
            let mut config = a.common.config("verify");
            config.insert("suite".into(), json!(a.suite.name()));
            let recs = checks
                .iter()
                .map(|c| {
                    json!({"suite": c.suite, "check": c.name, "measured": num(c.measured), "lo": num(c.lo), "hi": num(c.hi), "passed": c.passed})
                })
                .collect();
            let summary = format!("{} of {} checks passed", checks.len() - failed, checks.len());
            json_document(Value::Object(config), recs, vec![diagnostic(if failed == 0 { "info" } else { "error" }, summary)])
        }
        _ => csv_document(
            &["suite", "check", "measured", "lo", "hi", "passed"],
            checks
                .iter()
                .map(|c| vec![c.suite.to_string(), c.name.clone(), fmt(c.measured), fmt(c.lo), fmt(c.hi), c.passed.to_string()]),
        )?,
    };
    a.common.write(&text)?;
    if failed > 0 {
        return Err(CliError::Verify(failed));
    }
    Ok(())
}

fn cmd_green(a: &GreenArgs) -> Result<(), CliError> {
    no_svg(a.common.format, "green")?;
    let p = a.common.params()?;
    let (m, z) = (SectorIndex(a.m), C64::new(a.z_re, a.z_im));
    let closed = green_closed(m, z, a.r1, a.r2, &p)?;
    let series = a.terms.map(|n| green_series(m, z, a.r1, a.r2, &p, n)).transpose()?;
    let rel = series.map(|s| (s - closed).norm() / closed.norm());
    let text = match a.common.format {
        Format::Json => {
            let mut config = a.common.config("green");
            config.insert("terms".into(), json!(a.terms));
            let rec = json!({
                "m": a.m, "z_re": num(a.z_re), "z_im": num(a.z_im), "r1": num(a.r1), "r2": num(a.r2),
                "closed_re": num(closed.re), "closed_im": num(closed.im),
                "series_re": series.map_or(Value::Null, |s| num(s.re)),
                "series_im": series.map_or(Value::Null, |s| num(s.im)),
                "relative_difference": rel.map_or(Value::Null, num),
            });
            json_document(Value::Object(config), vec![rec], Vec::new())
        }
        _ => {
            let opt = |x: Option<f64>| x.map(fmt).unwrap_or_default();
            csv_document(
                &["m", "z_re", "z_im", "r1", "r2", "closed_re", "closed_im", "series_re", "series_im", "relative_difference"],
                [vec![
                    a.m.to_string(),
                    fmt(a.z_re),
                    fmt(a.z_im),
                    fmt(a.r1),
                    fmt(a.r2),
                    fmt(closed.re),
                    fmt(closed.im),
                    opt(series.map(|s| s.re)),
                    opt(series.map(|s| s.im)),
                    opt(rel),
                ]],
            )?
        }
    };
    a.common.write(&text)
}

fn report(e: &CliError) -> ExitCode {
    let body = json!({"error": {"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()}});
    eprintln!("{body}");
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(&CliError::Config(e.render().to_string().trim_end().to_string())),
    };
    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Green(a) => cmd_green(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}
