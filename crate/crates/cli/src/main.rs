//! `jacklab` command-line front end.
//!
//! Exit codes: 0 success, 2 validation failure, 3 numeric tolerance failure.

mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jacklab::specfile::SpecFile;
use num_complex::Complex64;

use report::{Format, Report};

pub const THREADS_ENV: &str = "JACKLAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "jacklab", version, about = "Jack measures, ribbon-path cumulants and Toeplitz numerics")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Output file (stdout if omitted)
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Significant digits for floating point values
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=17))]
    precision: u32,
}

/// Measure specification: a spec file plus per-key overrides.
#[derive(Args, Debug, Clone, Default)]
pub struct SpecArgs {
    /// Key-value spec file
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Override eps2 (negative rational)
    #[arg(long, allow_hyphen_values = true)]
    eps2: Option<String>,
    /// Override eps1 (positive rational)
    #[arg(long)]
    eps1: Option<String>,
    /// Override modes, e.g. "1=1, 2=1/3"
    #[arg(long)]
    modes: Option<String>,
    /// Override the truncation degree D
    #[arg(short = 'D', long = "truncation")]
    truncation: Option<usize>,
    /// Override the normalization deficit threshold
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jack polynomials of one degree, with norms
    JackTable(commands::JackTableArgs),
    /// Joint cumulant of ch^vee statistics by ribbon paths and by brute force
    Cumulant(commands::CumulantArgs),
    /// Limit-shape slope and spectral shift function on a grid
    LimitShape(commands::LimitShapeArgs),
    /// CLT covariance and mean shift at spectral parameters
    Clt(commands::CltArgs),
    /// Seeded samples from the truncated Jack measure
    Sample(commands::SampleArgs),
    /// Closed-form checks for the Plancherel symbol w + 1/w
    PlancherelCheck(commands::PlancherelCheckArgs),
    /// Wiener-Hopf factorization and resolvent probes
    Toeplitz(commands::ToeplitzArgs),
}

/// Failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Tolerance(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Tolerance(_) => 3,
            Failure::Io(_) => 1,
        }
    }
}

impl From<jacklab::Error> for Failure {
    fn from(e: jacklab::Error) -> Self {
        match e {
            jacklab::Error::NoConvergence(_) => Failure::Tolerance(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Validation(s) => write!(f, "validation error: {s}"),
            Failure::Tolerance(s) => write!(f, "tolerance failure: {s}"),
            Failure::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

impl SpecArgs {
    /// Merges the spec file (or the Plancherel default) with overrides and re-validates.
    pub fn resolve(&self) -> Result<SpecFile, Failure> {
        let text = match &self.spec {
            Some(p) => fs::read_to_string(p).map_err(|e| Failure::Validation(format!("{}: {e}", p.display())))?,
            None => "eps2 = -1\neps1 = 1\nmodes = 1=1\n".to_string(),
        };
        let base = SpecFile::parse(&text).map_err(|e| Failure::Validation(e.to_string()))?;
        let mut lines: Vec<(String, String)> = base
            .to_string()
            .lines()
            .filter_map(|l| l.split_once(" = ").map(|(k, v)| (k.to_string(), v.to_string())))
            .collect();
        let mut set = |k: &str, v: String| {
            if k == "modes" {
                lines.retain(|(key, _)| key != "in_modes" && key != "out_modes");
            }
            match lines.iter_mut().find(|(key, _)| key == k) {
                Some(slot) => slot.1 = v,
                None => lines.push((k.to_string(), v)),
            }
        };
        if let Some(v) = &self.eps2 {
            set("eps2", v.clone());
        }
        if let Some(v) = &self.eps1 {
            set("eps1", v.clone());
        }
        if let Some(v) = &self.modes {
            set("modes", v.clone());
        }
        if let Some(d) = self.truncation {
            set("D", d.to_string());
        }
        if let Some(t) = self.threshold {
            set("threshold", format!("{t:e}"));
        }
        let merged: String = lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        SpecFile::parse(&merged).map_err(|e| Failure::Validation(e.to_string()))
    }
}

/// Echoes the resolved spec into the report header.
pub fn echo_spec(r: &mut Report, s: &SpecFile) {
    for line in s.to_string().lines() {
        if let Some((k, v)) = line.split_once(" = ") {
            r.config(&format!("spec.{k}"), v);
        }
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    s.trim().parse::<Complex64>().map_err(|_| Failure::Validation(format!("not a complex number: {s:?}")))
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Validation(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Validation(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let precision = cli.run.precision as usize;
    let (mut report, verdict) = match &cli.command {
        Command::JackTable(a) => commands::jack_table(a, precision)?,
        Command::Cumulant(a) => commands::cumulant(a, precision)?,
        Command::LimitShape(a) => commands::limit_shape(a, precision)?,
        Command::Clt(a) => commands::clt(a, precision)?,
        Command::Sample(a) => commands::sample(a, precision)?,
        Command::PlancherelCheck(a) => commands::plancherel_check(a, precision)?,
        Command::Toeplitz(a) => commands::toeplitz(a, precision)?,
    };
    report.config("format", format!("{:?}", cli.run.format).to_lowercase());
    report.config("precision", precision);
    let mut buf = Vec::new();
    report.write(cli.run.format, &mut buf).map_err(|e| Failure::Io(e.to_string()))?;
    match &cli.run.output {
        Some(p) => fs::write(p, &buf).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        None => std::io::stdout().write_all(&buf).map_err(|e| Failure::Io(e.to_string()))?,
    }
    verdict
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("jacklab: {f}");
            ExitCode::from(f.code())
        }
    }
}
