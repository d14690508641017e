use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use drugwatch_core::corpus::classifier::{parse_training_jsonl, DEFAULT_THRESHOLD};
use drugwatch_core::corpus::pipeline::append_records;
use drugwatch_core::corpus::{parse_corpus_str, run_pipeline, IngestOptions, NormalizerConfig};
use drugwatch_core::extraction::{Lexicons, RemoteConfig, RemoteExtractor, RuleExtractor};
use drugwatch_core::normalize::{parse_records_jsonl, records_to_jsonl};
use drugwatch_core::{BaselineClassifier, Extractor, SynonymTable, UreqTransport};

use crate::{data_path, read_input, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtractorKind {
    Rule,
    Remote,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Corpus file, one JSON case report per line.
    #[arg(long)]
    corpus: PathBuf,
    /// Output record file (JSON lines).
    #[arg(long)]
    out: PathBuf,
    /// ADE sentence classification threshold.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    #[arg(long, value_enum, default_value = "rule")]
    extractor: ExtractorKind,
    /// Merge into an existing record file; re-ingested articles replace
    /// their old records.
    #[arg(long)]
    append: bool,
    /// Keep only articles mentioning an adverse-event keyword.
    #[arg(long)]
    keyword_filter: bool,
    /// Directory holding the default training data, lexicons and synonyms.
    #[arg(long, default_value = "data")]
    data_dir: PathBuf,
    /// Classifier training data, `{"text", "label"}` per line.
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long)]
    drugs: Option<PathBuf>,
    #[arg(long)]
    effects: Option<PathBuf>,
    #[arg(long)]
    synonyms: Option<PathBuf>,
    /// Model endpoint for `--extractor remote`.
    #[arg(long)]
    remote_url: Option<String>,
    #[arg(long, default_value = "remote")]
    remote_model: String,
}

pub fn run(a: IngestArgs) -> CliResult {
    if !(0.0..=1.0).contains(&a.threshold) {
        return Err(CliError::failed(format!("--threshold must be within [0, 1], got {}", a.threshold)));
    }
    let corpus_text = read_input(&a.corpus)?;
    let train_path = data_path(&a.train, &a.data_dir, "ade_train.jsonl");
    let synonyms_path = data_path(&a.synonyms, &a.data_dir, "synonyms.tsv");
    let training = parse_training_jsonl(&read_input(&train_path)?).map_err(|e| CliError::failed(e.to_string()))?;
    let classifier = BaselineClassifier::train(&training)
        .map_err(|e| CliError::failed(format!("{}: {e}", train_path.display())))?
        .with_threshold(a.threshold);
    let synonyms = SynonymTable::parse(&read_input(&synonyms_path)?)
        .map_err(|e| CliError::failed(format!("{}: {e}", synonyms_path.display())))?;

    let extractor: Box<dyn Extractor> = match a.extractor {
        ExtractorKind::Rule => {
            let drugs = data_path(&a.drugs, &a.data_dir, "lexicons/drugs.txt");
            let effects = data_path(&a.effects, &a.data_dir, "lexicons/effects.txt");
            read_input(&drugs)?;
            read_input(&effects)?;
            let lexicons = Lexicons::load(&drugs, &effects).map_err(|e| CliError::failed(e.to_string()))?;
            Box::new(RuleExtractor::new(lexicons).map_err(|e| CliError::failed(e.to_string()))?)
        }
        ExtractorKind::Remote => {
            let url = a.remote_url.clone().ok_or_else(|| CliError::failed("--extractor remote needs --remote-url"))?;
            let config = RemoteConfig::new(url, a.remote_model.clone());
            Box::new(
                RemoteExtractor::new(config, Arc::new(UreqTransport::default()))
                    .map_err(|e| CliError::failed(e.to_string()))?,
            )
        }
    };

    let parsed = parse_corpus_str(&corpus_text, IngestOptions { keyword_filter: a.keyword_filter });
    for r in &parsed.rejections {
        log::info!("{}:{}: skipped ({})", a.corpus.display(), r.line, r.reason);
    }
    let output = run_pipeline(&parsed.reports, &classifier, extractor.as_ref(), &NormalizerConfig { synonyms });

    let mut records = output.records;
    if a.append && a.out.exists() {
        let existing = parse_records_jsonl(&read_input(&a.out)?)
            .map_err(|e| CliError::failed(format!("{}: {e}", a.out.display())))?;
        let reprocessed: HashSet<String> = parsed.reports.iter().map(|r| r.pmid.clone()).collect();
        records = append_records(existing, records, &reprocessed);
    }
    std::fs::write(&a.out, records_to_jsonl(&records))
        .map_err(|e| CliError::failed(format!("cannot write {}: {e}", a.out.display())))?;

    let mut report = serde_json::to_value(output.report).unwrap_or_default();
    report["rejected"] = parsed.rejected().into();
    println!("{report}");
    Ok(())
}
