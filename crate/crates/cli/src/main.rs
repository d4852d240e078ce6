//! `ips`: command-line front end for the inner-product similarity
//! join toolkit.
//!
//! Exit codes: 0 on success, 1 when a requested verification fails,
//! 2 on usage or runtime errors.

mod generate;
mod grid;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = run::Cli::parse();
    match run::dispatch(cli) {
        Ok(run::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(run::Outcome::VerificationFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
