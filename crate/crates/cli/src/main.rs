use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use wha_cli::{execute, Cli, Outcome};

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let outcome = match execute(&cli, &argv) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &outcome {
        Outcome::Report(r, out) => emit(&r.to_json(), out.as_deref()),
        Outcome::Text(t, out) => emit(t, out.as_deref()),
    };
    if let Err(e) = written {
        eprintln!("input error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
