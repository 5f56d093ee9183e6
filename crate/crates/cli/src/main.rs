//! `qlci`: interferometry simulations from a TOML config.
//!
//! Subcommands:
//! - `ascan`     depth scan of a layered sample (CSV + JSON sidecar)
//! - `correlate` classical vs quantum degree of coherence (CSV + sidecar)
//! - `pq`        path-indistinguishability report from a density JSON
//! - `noise`     quantum-noise report (JSON)
//!
//! Exit codes: 0 success, 2 configuration/parse errors (with the parser's
//! line and column where available), 3 physics precondition failures.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::OutPaths;
use config::RunConfig;

/// Failure classes mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unparseable input: exit code 2.
    Config(String),
    /// Physically invalid request: exit code 3.
    Physics(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Physics(msg) => f.write_str(msg),
        }
    }
}

impl From<qlci_core::Error> for CliError {
    fn from(e: qlci_core::Error) -> Self {
        CliError::Physics(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Physics(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qlci",
    version,
    about = "Quantum and classical low-coherence interferometry simulations",
    long_about = "Simulates Michelson interferometry in both the classical wave picture and \
                  the truncated Fock-space quantum picture: depth scans, coherence-function \
                  comparisons, path-indistinguishability measures, and quantum-noise reports.\n\n\
                  Sources are Gaussian lines given as angular frequency (omega0, sigma) or as \
                  a center wavelength and FWHM bandwidth in length units, converted via \
                  omega0 = 2*pi*c/lambda and sigma = (2*pi*c*d_lambda/lambda^2)/2.35482."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration file
    #[arg(long)]
    config: PathBuf,
    /// Primary output path (CSV for scan commands, JSON for noise)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override [noise].seed; recorded in the embedded config
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct PqArgs {
    /// Density-matrix JSON file ({"dim", "re", "im"}; 2x2 sector or 4x4)
    density_json: PathBuf,
    /// Also write the report as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a depth scan of a layered sample
    Ascan(RunArgs),
    /// Compare classical and quantum degrees of coherence
    Correlate(RunArgs),
    /// Report the path-indistinguishability measure of a density matrix
    Pq(PqArgs),
    /// Emit the quantum-noise report
    Noise(RunArgs),
}

fn load_config(args: &RunArgs) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| {
        CliError::Config(format!("cannot read {}: {e}", args.config.display()))
    })?;
    let mut config = RunConfig::from_toml(&text)?;
    if let Some(seed) = args.seed {
        config.noise.seed = seed;
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ascan(args) => {
            let config = load_config(&args)?;
            let out = OutPaths::csv_with_sidecar(args.out.as_deref(), &config, "ascan");
            commands::cmd_ascan(&config, &out)
        }
        Command::Correlate(args) => {
            let config = load_config(&args)?;
            let out = OutPaths::csv_with_sidecar(args.out.as_deref(), &config, "correlate");
            commands::cmd_correlate(&config, &out)
        }
        Command::Pq(args) => commands::cmd_pq(&args.density_json, args.out.as_deref()),
        Command::Noise(args) => {
            let config = load_config(&args)?;
            let out = OutPaths::json_only(args.out.as_deref(), &config, "noise");
            commands::cmd_noise(&config, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
