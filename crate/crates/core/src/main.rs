use std::process::ExitCode;

use clap::Parser;
use simplex_orbits::cli::{run, Cli};

fn main() -> ExitCode {
    let status = run(Cli::parse());
    ExitCode::from(status as u8)
}
