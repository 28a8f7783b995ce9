use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use f4decomp_cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(v) => {
            // A closed pipe (`| head`) is not an error worth a panic.
            let _ = writeln!(std::io::stdout().lock(), "{v}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
