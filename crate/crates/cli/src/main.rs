//! Command-line front door: parse carriers and cubes from JSON, run the
//! homology computations, and emit machine- or human-readable reports.
//!
//! Exit codes: 0 success, 2 validation failure, 3 resource cap, 4 parse
//! error. `HOPF_SIZE_CAP` overrides the default carrier cap.

mod commands;
mod config;

use clap::Parser;

fn main() {
    let cli = config::Cli::parse();
    std::process::exit(commands::run(cli));
}
