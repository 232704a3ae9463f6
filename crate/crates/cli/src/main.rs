//! `sellmax`: solve, value, simulate and verify optimal selling rules.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sellmax_core::mc::Objective;

use config::{RunConfig, SharedArgs};
use error::CliError;

#[derive(Parser)]
#[command(name = "sellmax", version, about = "Optimal selling rules for a stock against its ultimate maximum")]
struct Cli {
    #[command(flatten)]
    shared: SharedArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    /// Average of M_T / Z_tau
    RatioInf,
    /// Average of Z_tau / M_T
    RatioSup,
}

#[derive(Subcommand)]
enum Command {
    /// Classify both problems and print the thresholds 0, sigma^2/2, sigma^2
    Regime,
    /// Solve for the selling boundary and write t, b, h, residual
    Boundary {
        /// Also write an SVG plot of b and h
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Value of both problems and the optimal rules
    Value {
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, default_value_t = 0.0)]
        x: f64,
        /// Boundary written earlier by `boundary`
        #[arg(long)]
        boundary_file: Option<PathBuf>,
        /// Do not solve for the boundary when no file is given
        #[arg(long)]
        no_solve: bool,
    },
    /// Monte Carlo estimates of stopping rules on shared paths
    Simulate {
        /// Comma-separated: immediate, terminal, fixed:T, ratio:C, boundary
        #[arg(long, default_value = "immediate,terminal")]
        rules: String,
        #[arg(long, value_enum, default_value = "ratio-inf")]
        objective: ObjectiveArg,
        #[arg(long)]
        boundary_file: Option<PathBuf>,
    },
    /// Check the inequalities and free-boundary conditions
    Verify {
        /// Comma-separated inequality ids or `fb`; all by default
        #[arg(long)]
        only: Option<String>,
        /// Parameter values for the single-time inequalities
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambdas: Option<Vec<f64>>,
        /// Interior times for the free-boundary checks
        #[arg(long, default_value_t = 10)]
        fb_times: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let c = RunConfig::resolve(&cli.shared)?;
    match cli.command {
        Command::Regime => commands::regime(&c),
        Command::Boundary { svg } => commands::boundary(&c, svg.as_deref()),
        Command::Value { t, x, boundary_file, no_solve } => {
            commands::value(&c, t, x, boundary_file.as_deref(), no_solve)
        }
        Command::Simulate { rules, objective, boundary_file } => {
            let objective = match objective {
                ObjectiveArg::RatioInf => Objective::RatioInf,
                ObjectiveArg::RatioSup => Objective::RatioSup,
            };
            commands::simulate(&c, &commands::parse_rules(&rules)?, objective, boundary_file.as_deref())
        }
        Command::Verify { only, lambdas, fb_times } => {
            let checks = commands::parse_checks(only.as_deref())?;
            commands::verify(&c, &checks, lambdas.as_deref(), fb_times)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
