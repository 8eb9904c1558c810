//! `jumpspec <command> --config FILE --out DIR`
//!
//! Exit status: 0 when the run completes and every assertion in the config
//! holds, 1 when an assertion fails, 2 on invalid input or a numerical error.

mod commands;
mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "jumpspec",
    version,
    about = "Jump-corrected interpolation, differentiation and quadrature experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corrected vs plain interpolation at dense probe points.
    Interp(Paths),
    /// Max-norm errors over (N, M) and fitted convergence orders.
    Converge(Paths),
    /// Corrected vs plain derivative at the nodes.
    Diff(Paths),
    /// Corrected vs plain quadrature over a list of N.
    Quad(Paths),
    /// Advection of a moving discontinuity by the method of lines.
    Evolve(Paths),
}

#[derive(Args)]
struct Paths {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
}

/// Size the global pool from `JUMPSPEC_THREADS`, if set.
fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("JUMPSPEC_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().with_context(|| format!("JUMPSPEC_THREADS = {value:?}"))?;
    anyhow::ensure!(threads >= 1, "JUMPSPEC_THREADS must be at least 1");
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn execute<T: serde::de::DeserializeOwned>(p: &Paths, command: fn(&T, &Path) -> Result<bool>) -> Result<bool> {
    let cfg: T = config::load(&p.config)?;
    std::fs::create_dir_all(&p.out).with_context(|| format!("creating {}", p.out.display()))?;
    command(&cfg, &p.out)
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    match &cli.command {
        Command::Interp(p) => execute(p, commands::interp),
        Command::Converge(p) => execute(p, commands::converge),
        Command::Diff(p) => execute(p, commands::diff),
        Command::Quad(p) => execute(p, commands::quad),
        Command::Evolve(p) => execute(p, commands::evolve),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
