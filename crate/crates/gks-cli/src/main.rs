use std::process::ExitCode;

use clap::Parser;
use gks_cli::{run, summary, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli.command, &cli.config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gks: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json() + "\n";
    match &cli.config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                eprintln!("gks: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            print!("{}", summary(&report));
        }
        None => print!("{json}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
