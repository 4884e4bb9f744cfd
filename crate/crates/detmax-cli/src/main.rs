//! `detmax`: composable core-sets for determinant maximization on the
//! command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical
//! degeneracy (rank-deficient selection, partial report still written),
//! 5 verification bound violation, 6 brute-force cap exceeded.

mod args;
mod commands;
mod dataset;
mod report;

use anyhow::Result;
use clap::Parser;
use thiserror::Error;

use args::{Cli, Command};

/// CLI-level validation failure: bad flag values or combinations.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("DETMAX_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| {
        UsageError(format!(
            "DETMAX_THREADS must be a nonnegative integer (0 = auto), got {raw:?}"
        ))
    })?;
    if n > 0 {
        // A failure here means a pool already exists; that pool wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Coreset(a) => commands::coreset::run(a),
        Command::Pipeline(a) => commands::pipeline::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Bench(a) => commands::bench::run(a),
        Command::Oracle(a) => commands::oracle::run(a),
    }
}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    use detmax::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(E::CombinatorialCapExceeded { .. }) => 6,
        Some(E::InvalidParameter(_)) => 2,
        Some(
            E::Parse { .. }
            | E::ArityMismatch { .. }
            | E::EmptyInput
            | E::Io(_)
            | E::NonFiniteCoordinate { .. }
            | E::EmptyPointSet
            | E::DimensionMismatch { .. }
            | E::OracleInconsistent(_),
        ) => 3,
        Some(_) => 1,
        None => {
            if err.downcast_ref::<std::io::Error>().is_some() {
                3
            } else {
                1
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| dispatch(&cli));
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(exit_code_for(&err));
        }
    }
}
