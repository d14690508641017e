use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use drugwatch_core::{ExtractionError, FaersError, SearchError};
use serde_json::{Map, Value};

/// Error response with body `{"error": "...", "code": <status>, ...extra}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
    pub extra: Map<String, Value>,
}

impl ApiError {
    pub fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError { status, message: message.into(), extra: Map::new() }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, message)
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    pub fn body(&self) -> Value {
        let mut body = Map::new();
        body.insert("error".into(), self.message.clone().into());
        body.insert("code".into(), self.status.as_u16().into());
        body.extend(self.extra.clone());
        Value::Object(body)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body())).into_response()
    }
}

impl From<SearchError> for ApiError {
    fn from(e: SearchError) -> Self {
        ApiError::bad_request(e.to_string())
    }
}

impl From<FaersError> for ApiError {
    fn from(e: FaersError) -> Self {
        let err = match &e {
            FaersError::InvalidQuery(_) => return ApiError::bad_request(e.to_string()).with("source", "faers"),
            FaersError::Quota { .. } => ApiError::new(StatusCode::SERVICE_UNAVAILABLE, e.to_string()),
            // Keep server paths out of client responses.
            FaersError::FixtureMissing { url, .. } => {
                ApiError::new(StatusCode::BAD_GATEWAY, format!("no recorded response for {url}"))
                    .with("fixture", drugwatch_core::faers::fixture_file_name(url))
            }
            FaersError::FixtureIo { .. } => ApiError::new(StatusCode::BAD_GATEWAY, "cannot read recorded FAERS response"),
            _ => ApiError::new(StatusCode::BAD_GATEWAY, e.to_string()),
        };
        err.with("source", "faers").with("degraded", true)
    }
}

impl From<ExtractionError> for ApiError {
    fn from(e: ExtractionError) -> Self {
        let retriable = e.is_retriable();
        let err = ApiError::new(StatusCode::BAD_GATEWAY, e.to_string()).with("retriable", retriable);
        match e {
            ExtractionError::Irreparable { raw, .. } => err.with("raw", raw),
            _ => err,
        }
    }
}

pub type ApiResult<T> = Result<T, ApiError>;
