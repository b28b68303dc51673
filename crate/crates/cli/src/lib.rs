//! Command-line front end: parameter scans and phase portraits written as CSV
//! with a JSON manifest that can replay the run.

// Negated comparisons also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod format;
pub mod grid;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use error::CliError;
pub use output::RunManifest;

use commands::{critical, orbit, phase_space, spectrum, spin_check};

#[derive(Debug, Parser)]
#[command(name = "spinorize", version, about = "Spinorized M-atom Jaynes-Cummings spectra and phase portraits")]
pub struct Cli {
    /// Directory for CSV files and manifest.json.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    /// Re-run the command recorded in a manifest.
    #[arg(long, global = true, value_name = "FILE")]
    pub replay: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check SU(2) relations and both Holstein-Primakoff maps.
    SpinCheck(spin_check::Args),
    /// Spectrum and ground-state photon number over a coupling grid.
    Spectrum(spectrum::Args),
    /// Contours and fixed points of a reduced classical Hamiltonian.
    PhaseSpace(phase_space::Args),
    /// Classical critical coupling, optionally against quantum curvature peaks.
    Critical(critical::Args),
    /// Integrate one classical orbit.
    Orbit(orbit::Args),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SpinCheck(_) => "spin-check",
            Command::Spectrum(_) => "spectrum",
            Command::PhaseSpace(_) => "phase-space",
            Command::Critical(_) => "critical",
            Command::Orbit(_) => "orbit",
        }
    }
}

/// Result of a successful run.
#[derive(Debug)]
pub struct Outcome {
    pub manifest: RunManifest,
    /// Human-readable summary for stdout.
    pub report: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let cli = match &cli.replay {
        Some(path) => {
            if cli.command.is_some() {
                return Err(CliError::Usage("--replay cannot be combined with a command".into()));
            }
            let manifest = RunManifest::read(path)?;
            let mut argv: Vec<OsString> = vec!["spinorize".into(), "--out".into(), cli.out.clone().into()];
            argv.extend(manifest.to_args().into_iter().map(OsString::from));
            Cli::try_parse_from(argv)?
        }
        None => cli,
    };
    let command = cli
        .command
        .ok_or_else(|| CliError::Usage("no command given (see --help)".into()))?;
    let mut ctx = commands::Context::create(&cli.out)?;
    let name = command.name();
    let parameters = match &command {
        Command::SpinCheck(a) => spin_check::run(a, &mut ctx)?,
        Command::Spectrum(a) => spectrum::run(a, &mut ctx)?,
        Command::PhaseSpace(a) => phase_space::run(a, &mut ctx)?,
        Command::Critical(a) => critical::run(a, &mut ctx)?,
        Command::Orbit(a) => orbit::run(a, &mut ctx)?,
    };
    let commands::Context { out, report, warnings } = ctx;
    let manifest = out.finish(name, parameters)?;
    Ok(Outcome {
        manifest,
        report,
        warnings,
    })
}

pub fn run_from_args<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(Cli::try_parse_from(args)?)
}

/// Runs and prints; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run_from_args(args) {
        Ok(outcome) => {
            for line in &outcome.report {
                println!("{line}");
            }
            for line in &outcome.warnings {
                eprintln!("warning: {line}");
            }
            0
        }
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
