//! Blocking HTTP seam shared by the remote extractor and the FAERS client.
//! Tests substitute scripted transports; production uses [`UreqTransport`].

use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Get,
    Post,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HttpRequest {
    pub method: Method,
    pub url: String,
    pub body: Option<String>,
    pub timeout: Duration,
}

impl HttpRequest {
    pub fn get(url: impl Into<String>, timeout: Duration) -> Self {
        HttpRequest { method: Method::Get, url: url.into(), body: None, timeout }
    }

    pub fn post_json(url: impl Into<String>, body: String, timeout: Duration) -> Self {
        HttpRequest { method: Method::Post, url: url.into(), body: Some(body), timeout }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HttpResponse {
    pub status: u16,
    pub body: String,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TransportError {
    #[error("request timed out: {0}")]
    Timeout(String),
    #[error("connection failed: {0}")]
    Connection(String),
    #[error("http error: {0}")]
    Other(String),
}

pub trait HttpTransport: Send + Sync {
    fn send(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError>;
}

pub struct UreqTransport {
    agent: ureq::Agent,
}

impl Default for UreqTransport {
    fn default() -> Self {
        let agent = ureq::Agent::config_builder().http_status_as_error(false).build().into();
        UreqTransport { agent }
    }
}

impl HttpTransport for UreqTransport {
    fn send(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        let result = match (request.method, &request.body) {
            (Method::Get, _) => self
                .agent
                .get(&request.url)
                .config()
                .timeout_global(Some(request.timeout))
                .build()
                .call(),
            (Method::Post, body) => self
                .agent
                .post(&request.url)
                .header("content-type", "application/json")
                .config()
                .timeout_global(Some(request.timeout))
                .build()
                .send(body.as_deref().unwrap_or("")),
        };
        let mut response = result.map_err(|e| match e {
            ureq::Error::Timeout(_) => TransportError::Timeout(e.to_string()),
            ureq::Error::Io(_) | ureq::Error::HostNotFound | ureq::Error::ConnectionFailed => {
                TransportError::Connection(e.to_string())
            }
            other => TransportError::Other(other.to_string()),
        })?;
        let status = response.status().as_u16();
        let body = response
            .body_mut()
            .read_to_string()
            .map_err(|e| TransportError::Other(e.to_string()))?;
        Ok(HttpResponse { status, body })
    }
}
