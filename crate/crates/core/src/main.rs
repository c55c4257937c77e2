use std::io::Write;
use std::process::ExitCode;

use biqutrit::cli::{run, Cli, EXIT_USAGE};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(out.code as u8)
}
