use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use lienil_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match lienil_cli::run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(outcome.output.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
