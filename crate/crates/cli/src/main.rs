mod mzi;
mod output;
mod selftest;
mod sweep;
mod tomo;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Irreality sweeps, simulated tomography and the interferometer demo.
#[derive(Debug, Parser)]
#[command(name = "realitysim", version, about)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "REALITYSIM_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Irreality of one of Bob's qubits as a function of theta.
    Sweep(sweep::SweepArgs),
    /// Reconstruct a density matrix from count data or a simulated run.
    Tomo(tomo::TomoArgs),
    /// Mach-Zehnder interferometer: detector curves, visibility, marker analysis.
    Mzi(mzi::MziArgs),
    /// Quick end-to-end check of the library.
    Selftest(selftest::SelftestArgs),
}

/// Failure classes with distinct exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments (exit 2).
    Usage(String),
    /// Anything that went wrong while running (exit 1).
    Runtime(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Runtime(e.into())
    }
}

pub type CliResult<T = ()> = std::result::Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: thread count must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let argv: Vec<String> = std::env::args().collect();
    let res = match cli.command {
        Command::Sweep(a) => sweep::run(a, &argv),
        Command::Tomo(a) => tomo::run(a, &argv),
        Command::Mzi(a) => mzi::run(a, &argv),
        Command::Selftest(a) => selftest::run(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
