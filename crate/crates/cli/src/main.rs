//! `linv`: run case files, the p = 23 fixture, or the self-test.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "linv", version, about = "p-adic L-invariants of adjoint weight-one cases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Working precision in base-p digits (default 40, or the case file's).
    #[arg(long)]
    precision: Option<u32>,
    /// Guard digits dropped from comparisons (default 5, or the case file's).
    #[arg(long)]
    guard: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate and run case files, with the representation audit.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// The ramified p = 23 fixture for x³ − x + 1.
    Greenberg23 {
        #[command(flatten)]
        common: Common,
    },
    /// Deterministic property sweep over every layer.
    Selftest {
        #[command(flatten)]
        common: Common,
        #[arg(long, hide = true)]
        inject_log_corruption: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check { paths, common } => commands::check(&paths, &common),
        Command::Greenberg23 { common } => commands::greenberg23(&common),
        Command::Selftest { common, inject_log_corruption } => commands::selftest(&common, inject_log_corruption),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
