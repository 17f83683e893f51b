use std::process::ExitCode;

use admissible::cli::RunConfig;
use clap::Parser;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match admissible::run::run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
