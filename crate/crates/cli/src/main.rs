mod args;
mod error;
mod files;
mod report;
mod run;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::CliError;

fn emit(cli: &Cli) -> Result<(), CliError> {
    let text = run::run(cli)?.render(cli.format);
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(CliError::Output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match emit(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("relaxgap: {e}");
            e.exit_code()
        }
    }
}
