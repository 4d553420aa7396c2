//! Command-line front end: verification suites, eigen/basis/kernel tables,
//! and forward/inverse transforms over the documented JSON schemas.
//!
//! Exit status: 0 when everything passed, 1 when checks or numeric
//! contracts failed, 2 for usage and configuration errors.

mod checks;
mod commands;
mod config;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Direction, GridSpec, Surface};
use config::{Format, RunConfig, SectorArg};
use error::CliError;

#[derive(Parser)]
#[command(
    name = "susy-bargmann",
    version,
    about = "Verification and tabulation tool for coupled-SUSY Segal-Bargmann analysis",
    long_about = "Drives the susy-bargmann library: runs the identity \
                  verification suite, tabulates eigenfunctions, basis \
                  constants, weights, and kernels, and applies the forward \
                  and inverse transforms to serialized coefficient files."
)]
struct Cli {
    /// Degree parameter of the superpotential x^n (n = 1 is the classical
    /// harmonic oscillator)
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,

    /// Which of the two sectors tables and kernel grids describe
    #[arg(long, global = true, value_enum, default_value_t = SectorArg::One)]
    sector: SectorArg,

    /// Highest eigenfunction/basis level driven by checks and tables
    #[arg(long, global = true, default_value_t = 8)]
    levels: u32,

    /// Global tolerance scale: pinned per-check tolerances are multiplied
    /// by tol / 1e-9, so the default runs each check at its pinned value
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Node budget for quadrature rules; self-calibration may exceed it,
    /// which is reported as a warning (an error under --strict)
    #[arg(long = "quad-points", global = true, default_value_t = 400)]
    quad_points: usize,

    /// Write the artifact here instead of stdout (reports, tables, grids)
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Artifact format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Escalate calibration and cross-check warnings to errors
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and report per-check residuals
    Check,
    /// Tabulate eigenvalues, eigenfunction coefficients, basis constants,
    /// and weight data
    Tables,
    /// Apply the forward or inverse transform to a serialized function
    /// (forward reads a weighted polynomial, inverse reads a holomorphic
    /// vector; the file's own n and sector govern the run)
    Transform {
        #[arg(value_enum)]
        direction: Direction,
        /// JSON input file
        input: PathBuf,
        /// Sample grid for the inverse direction as min:max:count
        /// (default -2:2:21)
        #[arg(allow_hyphen_values = true)]
        grid: Option<GridSpec>,
    },
    /// Tabulate a kernel or weight surface over a grid
    Kernel {
        #[arg(value_enum)]
        surface: Surface,
        /// Grid as min:max:count, applied to each axis
        #[arg(allow_hyphen_values = true)]
        grid: GridSpec,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if !cli.tol.is_finite() || cli.tol <= 0.0 {
        return Err(CliError::Config(format!(
            "--tol must be a positive number, got {}",
            cli.tol
        )));
    }
    let config = RunConfig {
        n: cli.n,
        sector: match cli.sector {
            SectorArg::One => "one".to_string(),
            SectorArg::Two => "two".to_string(),
        },
        levels: cli.levels,
        tol: cli.tol,
        quad_points: cli.quad_points,
        strict: cli.strict,
    };
    match cli.command {
        Command::Check => {
            let report = checks::run_suite(&config)?;
            print!("{}", report.console());
            if let Some(path) = &cli.output {
                std::fs::write(path, report.render(cli.format)).map_err(|error| {
                    CliError::Config(format!("cannot write {}: {error}", path.display()))
                })?;
            }
            Ok(report.pass())
        }
        Command::Tables => {
            commands::cmd_tables(&config, cli.sector.into(), cli.format, &cli.output)
        }
        Command::Transform {
            direction,
            input,
            grid,
        } => commands::cmd_transform(&config, direction, &input, grid, cli.format, &cli.output),
        Command::Kernel { surface, grid } => commands::cmd_kernel(
            &config,
            cli.sector.into(),
            surface,
            grid,
            cli.format,
            &cli.output,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Config(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
