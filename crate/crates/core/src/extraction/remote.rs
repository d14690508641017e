//! Adapter for model servers that speak the JSON event protocol:
//! `POST {"sentence": "...", "model": "<name>"}` answered by an event array.

use std::sync::{Arc, Condvar, Mutex};
use std::time::Duration;

use super::model_json::parse_model_json;
use super::repair::repair_json;
use super::{Extraction, ExtractionError, Extractor};
use crate::text::{char_offset, find_word_occurrences};
use crate::transport::{HttpRequest, HttpTransport, TransportError};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq)]
pub struct RemoteConfig {
    pub endpoint: String,
    pub model: String,
    pub timeout: Duration,
    pub max_in_flight: usize,
}

impl RemoteConfig {
    pub fn new(endpoint: impl Into<String>, model: impl Into<String>) -> Self {
        RemoteConfig { endpoint: endpoint.into(), model: model.into(), timeout: DEFAULT_TIMEOUT, max_in_flight: 4 }
    }
}

/// Counting semaphore bounding concurrent requests.
struct InFlight {
    count: Mutex<usize>,
    freed: Condvar,
    limit: usize,
}

impl InFlight {
    fn acquire(&self) -> InFlightGuard<'_> {
        let mut n = self.count.lock().unwrap_or_else(|e| e.into_inner());
        while *n >= self.limit {
            n = self.freed.wait(n).unwrap_or_else(|e| e.into_inner());
        }
        *n += 1;
        InFlightGuard(self)
    }
}

struct InFlightGuard<'a>(&'a InFlight);

impl Drop for InFlightGuard<'_> {
    fn drop(&mut self) {
        *self.0.count.lock().unwrap_or_else(|e| e.into_inner()) -= 1;
        self.0.freed.notify_one();
    }
}

pub struct RemoteExtractor {
    config: RemoteConfig,
    transport: Arc<dyn HttpTransport>,
    in_flight: InFlight,
}

impl RemoteExtractor {
    pub fn new(config: RemoteConfig, transport: Arc<dyn HttpTransport>) -> Result<Self, ExtractionError> {
        if config.endpoint.trim().is_empty() {
            return Err(ExtractionError::Config("remote extractor requires an endpoint URL".into()));
        }
        let limit = config.max_in_flight.max(1);
        Ok(RemoteExtractor {
            config,
            transport,
            in_flight: InFlight { count: Mutex::new(0), freed: Condvar::new(), limit },
        })
    }

    pub fn config(&self) -> &RemoteConfig {
        &self.config
    }
}

/// Parses a (possibly truncated) model response body into events, filling
/// span offsets where the span text occurs in the sentence.
pub fn parse_response(sentence: &str, body: &str) -> Result<Extraction, ExtractionError> {
    let repaired = repair_json(body.trim())
        .map_err(|e| ExtractionError::Irreparable { offset: e.offset, raw: body.to_string() })?;
    let parsed = parse_model_json(&repaired)?;
    let mut events = parsed.events;
    for event in &mut events {
        for span in event.args.values_mut().flatten() {
            let at = sentence
                .find(span.text.as_str())
                .map(|b| {
                    let s = char_offset(sentence, b);
                    (s, s + span.text.chars().count())
                })
                .or_else(|| find_word_occurrences(sentence, &span.text).first().copied());
            if let Some((s, e)) = at {
                if crate::text::char_slice(sentence, s, e) == span.text {
                    span.start = Some(s);
                    span.end = Some(e);
                }
            }
        }
    }
    Ok(Extraction { events, raw: body.to_string(), warnings: parsed.warnings })
}

impl Extractor for RemoteExtractor {
    fn name(&self) -> &str {
        &self.config.model
    }

    fn extract(&self, sentence: &str) -> Result<Extraction, ExtractionError> {
        let body = serde_json::json!({ "sentence": sentence, "model": self.config.model }).to_string();
        let request = HttpRequest::post_json(&self.config.endpoint, body, self.config.timeout);
        let response = {
            let _slot = self.in_flight.acquire();
            self.transport.send(&request)
        }
        .map_err(|e| match e {
            TransportError::Timeout(m) | TransportError::Connection(m) | TransportError::Other(m) => {
                ExtractionError::Unavailable(m)
            }
        })?;
        if !(200..300).contains(&response.status) {
            return Err(ExtractionError::RemoteStatus { status: response.status, body: response.body });
        }
        parse_response(sentence, &response.body)
    }
}
