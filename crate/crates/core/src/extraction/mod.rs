//! Pharmacovigilance event extraction.
//!
//! The event schema lives in [`schema`]. Extractors implement [`Extractor`];
//! two are provided: a lexicon/regex baseline ([`RuleExtractor`]) and an
//! adapter for a remote model endpoint ([`RemoteExtractor`]). Sequence models
//! exchange events through the tagged linearization in [`linearize`], JSON
//! models through [`model_json`], whose input is first completed by
//! [`repair::repair_json`].

pub mod lexicon;
pub mod linearize;
pub mod model_json;
pub mod remote;
pub mod repair;
pub mod rule;
pub mod schema;

use thiserror::Error;

pub use lexicon::Lexicon;
pub use linearize::{delinearize, linearize};
pub use model_json::{parse_model_json, ModelParse};
pub use remote::{RemoteConfig, RemoteExtractor};
pub use repair::{repair_json, RepairError};
pub use rule::{Lexicons, RuleExtractor};
pub use schema::{ArgumentRole, EventType, PharmaEvent, Span};

#[derive(Debug, Error)]
pub enum ExtractionError {
    #[error("unknown event type `{0}`")]
    UnknownEventType(String),
    #[error("unknown argument role `{0}`")]
    UnknownRole(String),
    #[error("role `{0}` has no spans")]
    EmptyRole(ArgumentRole),
    #[error("sub-role `{role}` present without its main role `{parent}`")]
    DanglingSubRole { role: ArgumentRole, parent: ArgumentRole },
    #[error(transparent)]
    Linearization(#[from] linearize::LinearizeError),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("could not repair model output at offset {offset}: {raw:?}")]
    Irreparable { offset: usize, raw: String },
    #[error("remote extractor unavailable (retriable): {0}")]
    Unavailable(String),
    #[error("remote extractor returned status {status}: {body:?}")]
    RemoteStatus { status: u16, body: String },
    #[error("{0}")]
    Config(String),
}

impl ExtractionError {
    /// Whether retrying the same request may succeed.
    pub fn is_retriable(&self) -> bool {
        match self {
            ExtractionError::Unavailable(_) => true,
            ExtractionError::RemoteStatus { status, .. } => *status == 429 || *status >= 500,
            _ => false,
        }
    }
}

/// Output of one extractor call: the parsed events plus the raw model output
/// (JSON text) so callers can show or export exactly what the model produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub events: Vec<PharmaEvent>,
    pub raw: String,
    pub warnings: Vec<String>,
}

/// A sentence-level event extractor. Implementations are immutable after
/// construction and may be shared across threads.
pub trait Extractor: Send + Sync {
    /// Model identifier passed through to clients.
    fn name(&self) -> &str;

    fn extract(&self, sentence: &str) -> Result<Extraction, ExtractionError>;
}
