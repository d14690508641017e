//! Client for the OpenFDA drug adverse-event endpoint, with a fixture mode
//! that replays recorded responses from disk.

pub mod client;
pub mod query;
pub mod response;
pub mod views;

use thiserror::Error;

pub use client::{fixture_file_name, FaersClient, FaersMode, RetryPolicy, API_KEY_ENV};
pub use query::{
    build_count_request, build_count_request_at, AgeUnit, CountField, FaersQuery, FaersTermKind, OnsetAge,
    DEFAULT_BASE_URL,
};
pub use response::{parse_count_response, CountEntry, FaersCountResult};
pub use views::{onset_age_filter, opposite_count, search_kind};

#[derive(Debug, Error)]
pub enum FaersError {
    #[error("invalid FAERS query: {0}")]
    InvalidQuery(String),
    #[error("malformed FAERS response: {0}")]
    Schema(String),
    #[error("FAERS quota exhausted after {attempts} attempts")]
    Quota { attempts: u32 },
    #[error("FAERS returned status {status}: {body}")]
    Status { status: u16, body: String },
    #[error("FAERS request failed: {0}")]
    Transport(#[from] crate::transport::TransportError),
    #[error("no recorded response for {url} (expected {path})")]
    FixtureMissing { url: String, path: String },
    #[error("cannot read fixture {path}: {source}")]
    FixtureIo {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
