//! `qamgolay` command-line front end.

mod enumerate;
mod generate;
mod io;
mod pmepr;
mod pucheck;
mod verify;

use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "qamgolay", version, about = "Golay complementary pairs over 4^q-QAM")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build pairs from a spec file or from seeded random recipes
    Generate(generate::Args),
    /// Check stored pairs: complementarity, array form and matrix route
    Verify(verify::Args),
    /// Count generated offsets against the closed-form counts
    Enumerate(enumerate::Args),
    /// Check the para-unitary products of spec recipes
    PuCheck(pucheck::Args),
    /// Oversampled envelope power of a stored pair
    Pmepr(pmepr::Args),
}

/// Whether every check a command ran succeeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

const THREADS_VAR: &str = "QAMGOLAY_THREADS";

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_VAR} must be a nonnegative integer, found {raw:?}"))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    configure_threads()?;
    match cli.command {
        Command::Generate(args) => generate::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Enumerate(args) => enumerate::run(&args),
        Command::PuCheck(args) => pucheck::run(&args),
        Command::Pmepr(args) => pmepr::run(&args),
    }
}

fn main() -> ExitCode {
    // clap reports usage errors itself with exit status 2
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Rejects a factorization whose product is not `q`.
pub(crate) fn checked_factorization(q: usize, factorization: Option<&[usize]>) -> anyhow::Result<Vec<usize>> {
    let fact = factorization.map_or_else(|| vec![q], <[usize]>::to_vec);
    if fact.iter().any(|&f| f < 2) {
        bail!("invalid --factorization: every factor must be at least 2, found {fact:?}");
    }
    let product: usize = fact.iter().product();
    if product != q {
        bail!("invalid --factorization: product {product} differs from --q {q}");
    }
    Ok(fact)
}
