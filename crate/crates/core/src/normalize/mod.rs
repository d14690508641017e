//! Normalization of extracted spans and per-article linking by drug.

pub mod age;
pub mod gender;
pub mod merge;
pub mod term;

use thiserror::Error;

pub use age::{normalize_age, AgeValue, MAX_AGE_YEARS, NEONATE_MAX_YEARS};
pub use gender::{normalize_gender, Gender};
pub use merge::{
    merge_by_drug, parse_records_jsonl, records_to_jsonl, MergeOutcome, NormalizedEventRecord, SourcedEvent,
};
pub use term::{normalize_term, SynonymTable, TermKind};

#[derive(Debug, Error)]
pub enum NormalizeError {
    #[error("term {0:?} is empty after cleaning")]
    EmptyTerm(String),
    #[error("synonym dictionary line {line}: {message}")]
    Dictionary { line: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
