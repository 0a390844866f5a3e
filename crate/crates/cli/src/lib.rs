//! Command-line front end: each subcommand runs one experiment and writes its
//! files under `--out`. A command returns `Ok(false)` when a requested check
//! fails, which the binary maps to exit status 1.

pub mod commands;
pub mod config;
pub mod output;
pub mod suite;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use signkernel::Example;

pub use config::{OutputFormat, RunConfig, SuiteConfig};
pub use output::OutDir;

#[derive(Debug, Parser)]
#[command(name = "signkernel", version, about = "Sign-kernel bilinear maximization experiments")]
pub struct Cli {
    /// Directory that receives every output file [default: signkernel-out].
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the discretized kernel matrix.
    Kernel(KernelArgs),
    /// Solve the discretized problem and write a report.
    Solve(SolveArgs),
    /// Integrate the d = 1 phase-plane dynamics.
    Ode(OdeArgs),
    /// Sample the closed-form optimizers and evaluate them by quadrature.
    ClosedForm(ClosedFormArgs),
    /// Spectral upper bound and Poincaré check on a response field.
    Bound(BoundArgs),
    /// Run the full acceptance suite and write its reports.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct KernelSource {
    /// Built-in kernel: 1 (half-plane) or 2 (circle-band).
    #[arg(long, value_parser = config::parse_example)]
    pub example: Option<Example>,
    /// Sign matrix file in the kernel text format.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub source: KernelSource,
    /// Grid size; required for built-in kernels, resamples a matrix file.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    LocalSearch,
    Seesaw,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: KernelSource,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, value_enum, default_value_t = Method::Seesaw)]
    pub method: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub restarts: usize,
    /// See-saw stopping tolerance on the per-sweep gain.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Report)]
    pub format: OutputFormat,
    /// Include the g and h rows in the report.
    #[arg(long)]
    pub fields: bool,
    /// Fail unless the value is within `--within` of this.
    #[arg(long)]
    pub expect: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub within: f64,
}

#[derive(Debug, Args)]
pub struct OdeArgs {
    #[arg(long, value_parser = config::parse_example)]
    pub example: Example,
    /// Conserved level |G| + |H|.
    #[arg(long)]
    pub c: f64,
    /// Initial point `G,H` on the level set.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub start: (f64, f64),
    /// Uniform samples on [0, 1], endpoints included.
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
    /// Largest k in the admissible-period table c = 1/(2k+1).
    #[arg(long, default_value_t = 4)]
    pub kmax: u32,
}

#[derive(Debug, Args)]
pub struct ClosedFormArgs {
    #[arg(long, value_parser = config::parse_example)]
    pub example: Example,
    #[arg(long)]
    pub d: usize,
    /// Quadrature grid size; also the number of CSV samples.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long)]
    pub expect: Option<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub within: f64,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_parser = config::parse_example)]
    pub example: Example,
    /// Field CSV (`x,v1..vd`) sampled uniformly on [0, 1); if absent the
    /// response field of a see-saw solution is used.
    #[arg(long)]
    pub field: Option<PathBuf>,
    /// Grid size for the see-saw run (a power of two).
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    /// TOML file with run-config keys; flags win over file values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

pub const DEFAULT_OUT: &str = "signkernel-out";

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected G,H, got '{s}'"))?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    Ok((p(a)?, p(b)?))
}

/// Runs one command. `Ok(true)` iff every requested check passed.
pub fn run(cli: Cli) -> Result<bool> {
    let out = || OutDir::create(cli.out.clone().unwrap_or_else(|| DEFAULT_OUT.into()));
    match &cli.command {
        Command::Kernel(a) => commands::kernel(&out()?, a),
        Command::Solve(a) => commands::solve(&out()?, a),
        Command::Ode(a) => commands::ode(&out()?, a),
        Command::ClosedForm(a) => commands::closed_form(&out()?, a),
        Command::Bound(a) => commands::bound(&out()?, a),
        Command::Reproduce(a) => {
            let file = match &a.config {
                Some(path) => RunConfig::load(path)?,
                None => RunConfig::default(),
            };
            let merged = RunConfig {
                seed: a.seed.or(file.seed),
                restarts: a.restarts.or(file.restarts),
                n: a.n.or(file.n),
                ..file.clone()
            };
            merged.validate()?;
            let out = cli
                .out
                .clone()
                .or(file.out)
                .unwrap_or_else(|| DEFAULT_OUT.into());
            let cfg = SuiteConfig::from_run_config(&merged)?;
            suite::reproduce(&OutDir::create(out)?, &cfg, &mut std::io::stdout())
        }
    }
}
