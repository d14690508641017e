use std::path::PathBuf;

use clap::Args;
use drugwatch_core::eval::parse_eval_file;
use drugwatch_core::EvalReport;

use crate::{read_input, CliError, CliResult};

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Gold file: one JSON event array (or `true`/`false`) per sentence.
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    pred: PathBuf,
    /// Add per-role scores.
    #[arg(long)]
    per_role: bool,
}

pub fn run(a: EvalArgs) -> CliResult {
    let parse = |path: &PathBuf| {
        parse_eval_file(&read_input(path)?).map_err(|e| CliError::failed(format!("{}: {e}", path.display())))
    };
    let gold = parse(&a.gold)?;
    let pred = parse(&a.pred)?;
    let report = EvalReport::evaluate(&gold, &pred).map_err(|e| CliError::failed(e.to_string()))?;
    println!("{}", report.to_flat_json(a.per_role));
    print!("{}", report.render_table(a.per_role));
    Ok(())
}
