mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit status for malformed command lines and inputs.
pub const EXIT_USAGE: u8 = 64;
/// Input parsed but is not a valid invertible polynomial.
pub const EXIT_DATA: u8 = 65;
/// Output file could not be written.
pub const EXIT_CANT_CREATE: u8 = 73;
/// A computation failed unexpectedly.
pub const EXIT_SOFTWARE: u8 = 70;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Some(path) = &outcome.out_file {
                if let Err(e) = std::fs::write(path, &outcome.output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_CANT_CREATE);
                }
            } else {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(outcome.output.as_bytes());
            }
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            ExitCode::from(outcome.status)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.status)
        }
    }
}
