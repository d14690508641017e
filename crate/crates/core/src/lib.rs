//! Core algorithms for the DrugWatch pharmacovigilance platform: corpus
//! ingestion and the extraction pipeline, event extraction, normalization
//! and linking, in-memory search and statistics, the OpenFDA client and
//! evaluation metrics.

pub mod corpus;
pub mod eval;
pub mod extraction;
pub mod faers;
pub mod normalize;
pub mod search;
pub mod text;
pub mod transport;

pub use corpus::{AdeLabel, BaselineClassifier, CaseReport, RunReport, Sentence, SentenceClassifier};
pub use eval::{ClassificationMetrics, EvalReport, Tally};
pub use extraction::{
    ArgumentRole, EventType, Extraction, ExtractionError, Extractor, PharmaEvent, RemoteConfig, RemoteExtractor,
    RuleExtractor, Span,
};
pub use faers::{FaersClient, FaersCountResult, FaersError, FaersMode, FaersQuery};
pub use normalize::{AgeValue, Gender, NormalizedEventRecord, SynonymTable, TermKind};
pub use search::{AgeFilter, AgeGroup, Index, QuerySpec, SearchError, StatsBundle};
pub use transport::{HttpRequest, HttpResponse, HttpTransport, TransportError, UreqTransport};
