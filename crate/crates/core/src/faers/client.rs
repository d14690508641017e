use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use sha1::{Digest, Sha1};

use super::query::{build_count_request_at, FaersQuery, DEFAULT_BASE_URL};
use super::response::{parse_count_response, FaersCountResult};
use super::FaersError;
use crate::transport::{HttpRequest, HttpTransport, UreqTransport};

pub const API_KEY_ENV: &str = "OPENFDA_API_KEY";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaersMode {
    Live,
    /// Replay `<sha1(url)>.json` recordings from a directory.
    Fixture(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    pub max_tries: u32,
    /// Delay before the second try; doubled for each further try.
    pub base_delay: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy { max_tries: 3, base_delay: Duration::from_millis(500) }
    }
}

/// Recording file name for a request URL.
pub fn fixture_file_name(url: &str) -> String {
    format!("{}.json", hex::encode(Sha1::digest(url.as_bytes())))
}

pub struct FaersClient {
    mode: FaersMode,
    base_url: String,
    transport: Arc<dyn HttpTransport>,
    api_key: Option<String>,
    retry: RetryPolicy,
    timeout: Duration,
}

impl FaersClient {
    pub fn new(mode: FaersMode, transport: Arc<dyn HttpTransport>) -> Self {
        FaersClient {
            mode,
            base_url: DEFAULT_BASE_URL.to_string(),
            transport,
            api_key: None,
            retry: RetryPolicy::default(),
            timeout: Duration::from_secs(30),
        }
    }

    /// Live client over HTTP, reading the optional API key from
    /// `OPENFDA_API_KEY`.
    pub fn live() -> Self {
        let key = std::env::var(API_KEY_ENV).ok().filter(|k| !k.is_empty());
        Self::new(FaersMode::Live, Arc::new(UreqTransport::default())).with_api_key(key)
    }

    pub fn fixture(dir: impl Into<PathBuf>) -> Self {
        Self::new(FaersMode::Fixture(dir.into()), Arc::new(NoNetwork))
    }

    pub fn with_base_url(mut self, base: impl Into<String>) -> Self {
        self.base_url = base.into();
        self
    }

    pub fn with_api_key(mut self, key: Option<String>) -> Self {
        self.api_key = key;
        self
    }

    pub fn with_retry(mut self, retry: RetryPolicy) -> Self {
        self.retry = retry;
        self
    }

    pub fn mode(&self) -> &FaersMode {
        &self.mode
    }

    pub fn request_url(&self, q: &FaersQuery) -> Result<String, FaersError> {
        build_count_request_at(&self.base_url, q)
    }

    pub fn fetch_counts(&self, q: &FaersQuery) -> Result<FaersCountResult, FaersError> {
        let url = self.request_url(q)?;
        match &self.mode {
            FaersMode::Fixture(dir) => replay(dir, &url),
            FaersMode::Live => self.fetch_live(&url),
        }
    }

    fn fetch_live(&self, url: &str) -> Result<FaersCountResult, FaersError> {
        let url = match &self.api_key {
            Some(key) => format!("{url}&api_key={}", form_urlencoded::byte_serialize(key.as_bytes()).collect::<String>()),
            None => url.to_string(),
        };
        let request = HttpRequest::get(url, self.timeout);
        let tries = self.retry.max_tries.max(1);
        for attempt in 1..=tries {
            let response = self.transport.send(&request)?;
            match response.status {
                200..=299 => return parse_count_response(&response.body),
                // OpenFDA answers a search without hits with 404 NOT_FOUND.
                404 if response.body.contains("NOT_FOUND") => return Ok(FaersCountResult::default()),
                429 if attempt < tries => {
                    let delay = self.retry.base_delay * 2u32.pow(attempt - 1);
                    log::info!("FAERS rate limited; retry {attempt} in {delay:?}");
                    std::thread::sleep(delay);
                }
                429 => break,
                status => return Err(FaersError::Status { status, body: response.body }),
            }
        }
        Err(FaersError::Quota { attempts: tries })
    }
}

fn replay(dir: &Path, url: &str) -> Result<FaersCountResult, FaersError> {
    let path = dir.join(fixture_file_name(url));
    let body = match std::fs::read_to_string(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(FaersError::FixtureMissing { url: url.to_string(), path: path.display().to_string() })
        }
        Err(source) => return Err(FaersError::FixtureIo { path: path.display().to_string(), source }),
    };
    parse_count_response(&body)
}

/// Transport for fixture-mode clients; any use is a bug.
struct NoNetwork;

impl HttpTransport for NoNetwork {
    fn send(&self, request: &HttpRequest) -> Result<crate::transport::HttpResponse, crate::transport::TransportError> {
        Err(crate::transport::TransportError::Other(format!("network disabled in fixture mode: {}", request.url)))
    }
}
