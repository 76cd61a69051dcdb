use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use depthlab::{exit_code, run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let written = match &outcome.out {
                Some(path) => std::fs::write(path, &outcome.output),
                None => std::io::stdout().write_all(outcome.output.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("depthlab: cannot write output: {e}");
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("depthlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
