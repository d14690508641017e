//! Replays recorded request/response pairs against a router.
//!
//! A case file is a JSON array of `{"name", "method", "uri", "body"?}`; the
//! expected response for each case lives next to it in `<name>.json` as
//! `{"status": <int>, "body": <json>}`.

use std::path::Path;

use axum::body::Body;
use axum::http::{header, Method, Request};
use axum::Router;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tower::ServiceExt;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    pub method: String,
    pub uri: String,
    /// JSON request body.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recorded {
    pub status: u16,
    pub body: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Sends one request; non-JSON bodies come back as JSON strings.
pub async fn call(router: &Router, method: &str, uri: &str, body: Option<(&str, Vec<u8>)>) -> Recorded {
    let method = Method::from_bytes(method.as_bytes()).unwrap_or(Method::GET);
    let builder = Request::builder().method(method).uri(uri);
    let request = match body {
        Some((content_type, bytes)) => builder.header(header::CONTENT_TYPE, content_type).body(Body::from(bytes)),
        None => builder.body(Body::empty()),
    }
    .expect("request parts are valid");
    let response = router.clone().oneshot(request).await.expect("router is infallible");
    let status = response.status().as_u16();
    let bytes = axum::body::to_bytes(response.into_body(), usize::MAX).await.unwrap_or_default();
    let body = serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into_owned()));
    Recorded { status, body }
}

pub async fn run_case(router: &Router, case: &Case) -> Recorded {
    let body = case.body.as_ref().map(|b| ("application/json", b.to_string().into_bytes()));
    call(router, &case.method, &case.uri, body).await
}

/// Runs every case in `<dir>/cases.json`. With `bless`, missing expected
/// files are written from the actual responses instead of failing.
pub async fn check_dir(router: &Router, dir: &Path, bless: bool) -> Result<Vec<Outcome>, String> {
    let cases_path = dir.join("cases.json");
    let text = std::fs::read_to_string(&cases_path).map_err(|e| format!("{}: {e}", cases_path.display()))?;
    let cases: Vec<Case> = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", cases_path.display()))?;
    let mut out = Vec::new();
    for case in &cases {
        let actual = run_case(router, case).await;
        let path = dir.join(format!("{}.json", case.name));
        let expected: Option<Recorded> = match std::fs::read_to_string(&path) {
            Ok(t) => Some(serde_json::from_str(&t).map_err(|e| format!("{}: {e}", path.display()))?),
            Err(_) if bless => {
                let pretty = serde_json::to_string_pretty(&actual).map_err(|e| e.to_string())?;
                std::fs::write(&path, pretty + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
                Some(actual.clone())
            }
            Err(e) => return Err(format!("{}: {e}", path.display())),
        };
        let passed = expected.as_ref() == Some(&actual);
        let detail = if passed {
            format!("{} {} -> {}", case.method, case.uri, actual.status)
        } else {
            format!(
                "{} {}: expected {}, got {}",
                case.method,
                case.uri,
                serde_json::to_string(&expected).unwrap_or_default(),
                serde_json::to_string(&actual).unwrap_or_default()
            )
        };
        out.push(Outcome { name: case.name.clone(), passed, detail });
    }
    Ok(out)
}

fn snapshot(dir: &Path, out: &mut std::collections::BTreeMap<std::path::PathBuf, Vec<u8>>) -> std::io::Result<()> {
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            snapshot(&path, out)?;
        } else {
            out.insert(path.clone(), std::fs::read(&path)?);
        }
    }
    Ok(())
}

fn outcome(name: &str, passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { name: name.to_string(), passed, detail: detail.into() }
}

async fn poll_complete(router: &Router, uri: &str) -> Recorded {
    for _ in 0..200 {
        let r = call(router, "GET", uri, None).await;
        if r.status != 200 || r.body["status"] == "complete" {
            return r;
        }
        tokio::time::sleep(std::time::Duration::from_millis(25)).await;
    }
    call(router, "GET", uri, None).await
}

/// Drives a full bulk annotation session against the bundled data in
/// `data_dir` (best a scratch copy) and checks that the directory is
/// unchanged afterwards and holds no trace of the uploaded text.
pub async fn bulk_session_check(data_dir: &Path) -> Result<Vec<Outcome>, String> {
    use crate::{router, AppState, DataPaths, ServiceConfig};
    use drugwatch_core::FaersClient;
    use std::sync::Arc;

    let mut before = Default::default();
    snapshot(data_dir, &mut before).map_err(|e| e.to_string())?;
    let load = |config: ServiceConfig| {
        AppState::load(&DataPaths::bundled(data_dir), FaersClient::fixture(data_dir.join("faers")), Vec::new(), config)
            .map(|s| router(Arc::new(s)))
    };
    let config = ServiceConfig { max_upload_lines: 5, ..ServiceConfig::default() };
    let app = load(config.clone())?;
    let marker = format!("zx{:016x}", rand::random::<u64>());
    let text = format!(
        "A 6-year-old boy developed rash after aspirin {marker}.\n\n\
         Metformin was well tolerated {marker}.\n\
         A 70-year-old woman had nausea on ibuprofen {marker}.\n"
    );
    let mut out = Vec::new();

    let up = call(&app, "POST", "/api/annotate/bulk", Some(("text/plain", text.clone().into_bytes()))).await;
    out.push(outcome("upload", up.status == 201 && up.body["sentences"] == 3, format!("{} {}", up.status, up.body)));
    let sid = up.body["session_id"].as_str().unwrap_or_default().to_string();
    let base = format!("/api/annotate/bulk/{sid}?model=rule_based");

    let all = poll_complete(&app, &base).await;
    let rows = all.body["rows"].as_array().cloned().unwrap_or_default();
    let indices: Vec<u64> = rows.iter().filter_map(|r| r["index"].as_u64()).collect();
    out.push(outcome(
        "results",
        all.status == 200 && all.body["status"] == "complete" && indices == [0, 1, 2] && all.body["pending"] == 0.0,
        format!("{} indices {indices:?}", all.status),
    ));

    let has_role = |r: &Value, role: &str| {
        r["events"].as_array().is_some_and(|evs| evs.iter().any(|e| e["arguments"][role].as_array().is_some_and(|s| !s.is_empty())))
    };
    let expect_effect: Vec<&Value> = rows.iter().filter(|r| has_role(r, "effect")).collect();
    let by_role = poll_complete(&app, &format!("{base}&filter_role=effect")).await;
    let got: Vec<Value> = by_role.body["rows"].as_array().cloned().unwrap_or_default();
    out.push(outcome(
        "filter_role",
        !expect_effect.is_empty() && got.iter().collect::<Vec<_>>() == expect_effect && by_role.body["matched"] == got.len(),
        format!("{} of {} rows", got.len(), rows.len()),
    ));
    let by_span = poll_complete(&app, &format!("{base}&filter_span=ASPIRIN")).await;
    let span_idx: Vec<u64> =
        by_span.body["rows"].as_array().map(|a| a.iter().filter_map(|r| r["index"].as_u64()).collect()).unwrap_or_default();
    out.push(outcome("filter_span", span_idx == [0], format!("{span_idx:?}")));

    let mut paged = Vec::new();
    for offset in 0..3 {
        let p = poll_complete(&app, &format!("{base}&offset={offset}&page_size=1")).await;
        paged.extend(p.body["rows"].as_array().cloned().unwrap_or_default());
    }
    out.push(outcome("pagination", paged == rows, format!("{} paged rows", paged.len())));

    let cmp = call(
        &app,
        "POST",
        &format!("/api/annotate/bulk/{sid}/compare"),
        Some(("application/json", serde_json::json!({"model_a": "rule_based", "model_b": "rule_based"}).to_string().into_bytes())),
    )
    .await;
    out.push(outcome(
        "compare",
        cmp.status == 200 && cmp.body["agreement"]["em_f1"] == 100.0 && cmp.body["rows"].as_array().is_some_and(|r| r.len() == 3),
        format!("{} {}", cmp.status, cmp.body["agreement"]),
    ));

    let too_many = "Aspirin caused rash.\n".repeat(config.max_upload_lines + 1);
    let big = call(&app, "POST", "/api/annotate/bulk", Some(("text/plain", too_many.into_bytes()))).await;
    out.push(outcome("line_limit", big.status == 413 && big.body["max_lines"] == config.max_upload_lines, format!("{}", big.status)));

    let short = load(ServiceConfig { session_ttl: std::time::Duration::from_millis(50), ..ServiceConfig::default() })?;
    let s = call(&short, "POST", "/api/annotate/bulk", Some(("text/plain", text.clone().into_bytes()))).await;
    let sid2 = s.body["session_id"].as_str().unwrap_or_default().to_string();
    tokio::time::sleep(std::time::Duration::from_millis(120)).await;
    let gone = call(&short, "GET", &format!("/api/annotate/bulk/{sid2}"), None).await;
    out.push(outcome("expiry", s.status == 201 && gone.status == 410, format!("{} then {}", s.status, gone.status)));

    let mut after = Default::default();
    snapshot(data_dir, &mut after).map_err(|e| e.to_string())?;
    out.push(outcome("data_unchanged", before == after, format!("{} files", after.len())));
    let leaked: Vec<String> = after
        .iter()
        .filter(|(_, bytes)| bytes.windows(marker.len()).any(|w| w == marker.as_bytes()))
        .map(|(p, _)| p.display().to_string())
        .collect();
    out.push(outcome("no_persistence", leaked.is_empty(), format!("{leaked:?}")));
    Ok(out)
}
