//! Live and bulk annotation endpoints.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::BytesRejection;
use axum::extract::{Path, RawQuery, State};
use axum::http::StatusCode;
use axum::response::IntoResponse;
use axum::Json;
use drugwatch_core::eval::{em_f1, token_f1};
use drugwatch_core::{ArgumentRole, Extractor, PharmaEvent, RuleExtractor};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::data::GOLD;
use crate::error::{ApiError, ApiResult};
use crate::params::{Params, DEFAULT_PAGE_SIZE, MAX_PAGE_SIZE};
use crate::session::{Job, RowOutcome, Session, PRELOADED_ID};
use crate::state::AppState;

type AppStateRef = State<Arc<AppState>>;

/// Events in the model JSON schema, spans carrying their char offsets.
pub fn events_json(events: &[PharmaEvent]) -> Value {
    events.iter().map(|e| json!({ "event_type": e.event_type.as_str(), "arguments": e.args })).collect()
}

fn json_body<T: for<'de> Deserialize<'de>>(body: Result<Bytes, BytesRejection>) -> ApiResult<T> {
    let bytes = body.map_err(|e| ApiError::new(e.status(), e.body_text()))?;
    serde_json::from_slice(&bytes).map_err(|e| ApiError::bad_request(format!("invalid JSON body: {e}")))
}

fn unknown_model(model: &str, available: Vec<String>) -> ApiError {
    ApiError::bad_request(format!("unknown model `{model}`; available: {}", available.join(", "))).with("models", available)
}

#[derive(Deserialize)]
struct LiveRequest {
    #[serde(default)]
    sentence: String,
    model: Option<String>,
}

pub async fn live(State(app): AppStateRef, body: Result<Bytes, BytesRejection>) -> ApiResult<Json<Value>> {
    let req: LiveRequest = json_body(body)?;
    let sentence = req.sentence.trim().to_string();
    if sentence.is_empty() {
        return Err(ApiError::bad_request("`sentence` must not be empty"));
    }
    let model = req.model.unwrap_or_else(|| RuleExtractor::NAME.to_string());
    let extractor: Arc<dyn Extractor> =
        app.models.get(&model).cloned().ok_or_else(|| unknown_model(&model, app.model_names()))?;
    let x = tokio::task::spawn_blocking(move || extractor.extract(&sentence))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    Ok(Json(json!({ "model": model, "events": events_json(&x.events), "raw": x.raw, "warnings": x.warnings })))
}

pub async fn upload(State(app): AppStateRef, body: Result<Bytes, BytesRejection>) -> ApiResult<impl IntoResponse> {
    let bytes = body.map_err(|e| ApiError::new(e.status(), e.body_text()))?;
    if bytes.len() > app.config.max_upload_bytes {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!("upload exceeds {} bytes", app.config.max_upload_bytes),
        ));
    }
    let text = std::str::from_utf8(&bytes).map_err(|_| ApiError::bad_request("upload must be UTF-8 text"))?;
    let sentences: Vec<String> = text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect();
    if sentences.is_empty() {
        return Err(ApiError::bad_request("upload has no sentences; expected one sentence per line"));
    }
    if sentences.len() > app.config.max_upload_lines {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!("upload has {} lines; the limit is {}", sentences.len(), app.config.max_upload_lines),
        )
        .with("max_lines", app.config.max_upload_lines));
    }
    let n = sentences.len();
    let session = app.sessions.create(sentences);
    let body = json!({
        "session_id": session.id,
        "sentences": n,
        "ttl_secs": app.sessions.ttl().as_secs(),
        "models": app.model_names(),
    });
    Ok((StatusCode::CREATED, Json(body)))
}

fn session(app: &AppState, sid: &str) -> ApiResult<Arc<Session>> {
    app.sessions
        .get(sid)
        .ok_or_else(|| ApiError::new(StatusCode::GONE, format!("annotation session `{sid}` is unknown or expired")))
}

fn session_models(app: &AppState, s: &Session) -> Vec<String> {
    let mut names = s.stored_models();
    names.extend(app.model_names());
    names
}

fn job(app: &AppState, s: &Session, model: &str) -> ApiResult<Arc<Job>> {
    s.job(model, app.models.get(model)).ok_or_else(|| unknown_model(model, session_models(app, s)))
}

fn default_model(s: &Session) -> String {
    if s.id == PRELOADED_ID { GOLD } else { RuleExtractor::NAME }.to_string()
}

/// Role presence and case-insensitive span substring filters.
#[derive(Debug, Clone, Default)]
pub struct RowFilter {
    pub role: Option<ArgumentRole>,
    pub span: Option<String>,
}

impl RowFilter {
    fn new(role: Option<&str>, span: Option<&str>) -> ApiResult<Self> {
        let role = role
            .map(|r| ArgumentRole::from_name(r).ok_or_else(|| ApiError::bad_request(format!("unknown role `{r}`"))))
            .transpose()?;
        Ok(RowFilter { role, span: span.map(str::to_lowercase).filter(|s| !s.is_empty()) })
    }

    pub fn matches(&self, events: &[PharmaEvent]) -> bool {
        if self.role.is_none() && self.span.is_none() {
            return true;
        }
        events.iter().any(|e| {
            e.args.iter().any(|(role, spans)| {
                self.role.is_none_or(|r| r == *role)
                    && !spans.is_empty()
                    && self.span.as_ref().is_none_or(|needle| spans.iter().any(|s| s.text.to_lowercase().contains(needle)))
            })
        })
    }
}

fn outcome_events(o: &RowOutcome) -> &[PharmaEvent] {
    o.as_deref().unwrap_or(&[])
}

fn row_json(index: usize, sentence: &str, outcome: &RowOutcome) -> Value {
    match outcome {
        Ok(events) => json!({ "index": index, "sentence": sentence, "events": events_json(events) }),
        Err(e) => json!({ "index": index, "sentence": sentence, "events": [], "error": e }),
    }
}

fn page_bounds(offset: Option<usize>, size: Option<usize>) -> ApiResult<(usize, usize)> {
    let size = size.unwrap_or(DEFAULT_PAGE_SIZE);
    if size == 0 || size > MAX_PAGE_SIZE {
        return Err(ApiError::bad_request(format!("`page_size` must be between 1 and {MAX_PAGE_SIZE}")));
    }
    Ok((offset.unwrap_or(0), size))
}

fn progress(job: &Job) -> (usize, f64) {
    let (done, total) = (job.done(), job.total());
    let pending = if total == 0 { 0.0 } else { (total - done) as f64 / total as f64 };
    (done, pending)
}

pub async fn results(
    State(app): AppStateRef,
    Path(sid): Path<String>,
    RawQuery(raw): RawQuery,
) -> ApiResult<Json<Value>> {
    let p = Params::parse(raw.as_deref());
    let s = session(&app, &sid)?;
    let model = p.get("model").map(String::from).unwrap_or_else(|| default_model(&s));
    let filter = RowFilter::new(p.get("filter_role"), p.get("filter_span"))?;
    let (offset, size) = p.page()?;
    let job = job(&app, &s, &model)?;
    let complete = job.wait(app.config.bulk_wait).await;
    let (done, pending) = progress(&job);
    let mut body = json!({
        "session_id": s.id,
        "model": model,
        "status": if complete { "complete" } else { "pending" },
        "total_sentences": s.sentences.len(),
        "completed": done,
        "pending": pending,
        "offset": offset,
        "page_size": size,
    });
    let (matched, rows) = if complete {
        let all = job.rows();
        let hits: Vec<usize> = (0..all.len()).filter(|&i| filter.matches(outcome_events(&all[i]))).collect();
        let rows: Vec<Value> =
            hits.iter().skip(offset).take(size).map(|&i| row_json(i, &s.sentences[i], &all[i])).collect();
        (hits.len(), rows)
    } else {
        (0, Vec::new())
    };
    body["matched"] = matched.into();
    body["rows"] = rows.into();
    Ok(Json(body))
}

#[derive(Deserialize)]
struct CompareRequest {
    model_a: String,
    model_b: String,
    filter_role: Option<String>,
    filter_span: Option<String>,
    offset: Option<usize>,
    page_size: Option<usize>,
}

pub async fn compare(
    State(app): AppStateRef,
    Path(sid): Path<String>,
    body: Result<Bytes, BytesRejection>,
) -> ApiResult<Json<Value>> {
    let s = session(&app, &sid)?;
    let req: CompareRequest = json_body(body)?;
    let filter = RowFilter::new(req.filter_role.as_deref(), req.filter_span.as_deref())?;
    let (offset, size) = page_bounds(req.offset, req.page_size)?;
    let (job_a, job_b) = (job(&app, &s, &req.model_a)?, job(&app, &s, &req.model_b)?);
    let complete = job_a.wait(app.config.bulk_wait).await & job_b.wait(app.config.bulk_wait).await;
    let done = job_a.done().min(job_b.done());
    let total = s.sentences.len();
    let mut body = json!({
        "session_id": s.id,
        "model_a": req.model_a,
        "model_b": req.model_b,
        "status": if complete { "complete" } else { "pending" },
        "total_sentences": total,
        "completed": done,
        "pending": if total == 0 { 0.0 } else { (total - done) as f64 / total as f64 },
        "offset": offset,
        "page_size": size,
    });
    if !complete {
        body["matched"] = 0.into();
        body["rows"] = json!([]);
        return Ok(Json(body));
    }
    let (a, b) = (job_a.rows(), job_b.rows());
    let ea: Vec<Vec<PharmaEvent>> = a.iter().map(|o| outcome_events(o).to_vec()).collect();
    let eb: Vec<Vec<PharmaEvent>> = b.iter().map(|o| outcome_events(o).to_vec()).collect();
    // Agreement scores model b against model a as the reference.
    let agreement = match (em_f1(&ea, &eb), token_f1(&ea, &eb)) {
        (Ok(em), Ok(tok)) => json!({
            "em_f1": round2(em.overall.f1()),
            "token_f1": round2(tok.overall.f1()),
        }),
        _ => Value::Null,
    };
    let hits: Vec<usize> = (0..total).filter(|&i| filter.matches(&ea[i]) || filter.matches(&eb[i])).collect();
    let rows: Vec<Value> = hits
        .iter()
        .skip(offset)
        .take(size)
        .map(|&i| {
            json!({
                "index": i,
                "sentence": s.sentences[i],
                "a": events_json(&ea[i]),
                "b": events_json(&eb[i]),
                "a_error": a[i].as_ref().err(),
                "b_error": b[i].as_ref().err(),
            })
        })
        .collect();
    body["agreement"] = agreement;
    body["matched"] = hits.len().into();
    body["rows"] = rows.into();
    Ok(Json(body))
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}
