mod eval_cmd;
mod faers_cmd;
mod ingest;
mod serve;
mod synth;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit code for unreadable input files.
pub const EXIT_UNREADABLE: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn failed(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    pub fn unreadable(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError { code: EXIT_UNREADABLE, message: format!("cannot read {}: {e}", path.display()) }
    }
}

pub type CliResult = Result<(), CliError>;

pub fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::unreadable(path, e))
}

#[derive(Parser)]
#[command(name = "drugwatch", version, about = "Pharmacovigilance text mining and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the extraction pipeline over a case-report corpus.
    Ingest(ingest::IngestArgs),
    /// Score predicted events or labels against gold.
    Eval(eval_cmd::EvalArgs),
    /// Start the REST service.
    Serve(serve::ServeArgs),
    /// Build, fetch or record OpenFDA adverse-event count queries.
    #[command(subcommand)]
    Faers(faers_cmd::FaersCommand),
}

/// Resolves an optional path flag against the data directory.
pub fn data_path(explicit: &Option<PathBuf>, data_dir: &Path, default: &str) -> PathBuf {
    explicit.clone().unwrap_or_else(|| data_dir.join(default))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let result = match Cli::parse().command {
        Command::Ingest(a) => ingest::run(a),
        Command::Eval(a) => eval_cmd::run(a),
        Command::Serve(a) => serve::run(a),
        Command::Faers(c) => faers_cmd::run(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("drugwatch: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
