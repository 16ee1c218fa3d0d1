//! `atddg`: command-line front end for the active target defense solver.

mod check;
mod config;
mod output;
mod region;
mod simulate;
mod solve;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "atddg", version, about = "Active target defense differential game solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal aimpoint, miss distance and headings as JSON.
    ///
    /// Exits 0 on escape, 2 on capture.
    Solve {
        /// Scenario config (`-` for stdin).
        config: PathBuf,
    },
    /// Simulate an engagement; prints the outcome as JSON.
    Simulate {
        config: PathBuf,
        /// Write the trajectory CSV (`t,xT,yT,xA,yA,xD,yD`) here.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Escape-region boundary as `x,y` CSV.
    Region {
        config: PathBuf,
        /// Write one `boundary_xA_<x_A>.csv` per x_A value here instead of stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Solve a parameter grid; prints CSV in input order.
    ///
    /// ATDDG_THREADS caps the worker count.
    Sweep { config: PathBuf },
    /// Compare the analytic solution against the brute-force oracle.
    ///
    /// Exits 3 when any check fails.
    Check { config: PathBuf },
}

/// A failure reported as `{"error": ...}` on stderr.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<atddg_core::Error> for CliError {
    fn from(e: atddg_core::Error) -> Self {
        Self::input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { config } => solve::run(&config),
        Command::Simulate { config, trajectory } => simulate::run(&config, trajectory.as_deref()),
        Command::Region { config, out_dir } => region::run(&config, out_dir.as_deref()),
        Command::Sweep { config } => sweep::run(&config),
        Command::Check { config } => check::run(&config),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.message }));
            ExitCode::from(e.code)
        }
    }
}
