//! In-memory faceted search and statistics over normalized records.

pub mod index;
pub mod query;
pub mod stats;

use thiserror::Error;

pub use index::Index;
pub use query::{AgeFilter, AgeGroup, QuerySpec};
pub use stats::{Facet, CrossCell, RankedTerm, StatsBundle, TermCount, DEFAULT_TOP_N, TIER_COUNT};

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("duplicate record for pmid {pmid} and drug {drug:?}")]
    DuplicateRecord { pmid: String, drug: String },
    #[error("record for pmid {0} has an empty drug")]
    EmptyDrug(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}
