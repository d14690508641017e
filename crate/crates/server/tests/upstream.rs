mod common;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use drugwatch_core::faers::RetryPolicy;
use drugwatch_core::{
    Extractor, FaersClient, FaersMode, HttpRequest, HttpResponse, HttpTransport, RemoteConfig, RemoteExtractor,
    TransportError,
};
use drugwatch_server::{router, ServiceConfig};
use serde_json::json;

struct Scripted {
    reply: Box<dyn Fn(&HttpRequest) -> Result<HttpResponse, TransportError> + Send + Sync>,
    calls: AtomicUsize,
}

impl Scripted {
    fn new(f: impl Fn(&HttpRequest) -> Result<HttpResponse, TransportError> + Send + Sync + 'static) -> Arc<Self> {
        Arc::new(Scripted { reply: Box::new(f), calls: AtomicUsize::new(0) })
    }
}

impl HttpTransport for Scripted {
    fn send(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        (self.reply)(request)
    }
}

fn remote(name: &str, t: Arc<Scripted>) -> Arc<dyn Extractor> {
    Arc::new(RemoteExtractor::new(RemoteConfig::new("http://model.invalid/extract", name), t).unwrap())
}

#[tokio::test]
async fn faers_quota_degrades_to_503() {
    let t = Scripted::new(|_| Ok(HttpResponse { status: 429, body: "{}".into() }));
    let faers = FaersClient::new(FaersMode::Live, t.clone())
        .with_retry(RetryPolicy { max_tries: 3, base_delay: Duration::ZERO });
    let dir = common::data_dir();
    let r = router(common::state_with(&dir, faers, Vec::new(), ServiceConfig::default()));
    let res = common::get(&r, "/api/demographics?terms=aspirin&source=faers").await;
    assert_eq!(res.status, 503);
    assert_eq!(res.body["source"], "faers");
    assert_eq!(res.body["degraded"], true);
    assert_eq!(t.calls.load(Ordering::SeqCst), 3);
    // Literature endpoints are unaffected.
    assert_eq!(common::get(&r, "/api/demographics?terms=aspirin").await.status, 200);
}

#[tokio::test]
async fn remote_timeout_is_retriable_502() {
    let t = Scripted::new(|_| Err(TransportError::Timeout("30s".into())));
    let dir = common::data_dir();
    let r = router(common::state_with(&dir, FaersClient::fixture(dir.join("faers")), vec![remote("flaky", t)], ServiceConfig::default()));
    let res = common::post_json(&r, "/api/annotate/live", json!({"sentence": "Aspirin caused rash.", "model": "flaky"})).await;
    assert_eq!(res.status, 502);
    assert_eq!(res.body["retriable"], true);
}

#[tokio::test]
async fn remote_garbage_is_non_retriable_502_with_raw() {
    let t = Scripted::new(|_| Ok(HttpResponse { status: 200, body: "}}not json".into() }));
    let dir = common::data_dir();
    let r = router(common::state_with(&dir, FaersClient::fixture(dir.join("faers")), vec![remote("garbled", t)], ServiceConfig::default()));
    let res = common::post_json(&r, "/api/annotate/live", json!({"sentence": "Aspirin caused rash.", "model": "garbled"})).await;
    assert_eq!(res.status, 502);
    assert_eq!(res.body["retriable"], false);
    assert_eq!(res.body["raw"], "}}not json");
}

#[tokio::test]
async fn truncated_remote_output_is_repaired() {
    let dir = common::data_dir();
    let body = std::fs::read_to_string(dir.join("remote/response_truncated.txt")).unwrap();
    let sentence = std::fs::read_to_string(dir.join("remote/sentence.txt")).unwrap().trim().to_string();
    let t = Scripted::new(move |_| Ok(HttpResponse { status: 200, body: body.clone() }));
    let r = router(common::state_with(&dir, FaersClient::fixture(dir.join("faers")), vec![remote("t5", t)], ServiceConfig::default()));
    let res = common::post_json(&r, "/api/annotate/live", json!({"sentence": sentence, "model": "t5"})).await;
    assert_eq!(res.status, 200, "{}", res.body);
    let events = res.body["events"].as_array().unwrap();
    assert!(events.len() >= 2);
    let sjs = &events[0]["arguments"]["effect"][0];
    assert_eq!(sjs["text"], "Stevens-Johnson syndrome");
    let (s, e) = (sjs["start"].as_u64().unwrap() as usize, sjs["end"].as_u64().unwrap() as usize);
    assert_eq!(sentence.chars().skip(s).take(e - s).collect::<String>(), "Stevens-Johnson syndrome");
    // The second event comes from another sentence and gets no offsets.
    assert!(events[1]["arguments"]["effect"][0]["start"].is_null());
}

#[tokio::test]
async fn bulk_rows_carry_per_sentence_errors() {
    let t = Scripted::new(|req| {
        if req.body.as_deref().unwrap_or("").contains("fails") {
            Err(TransportError::Connection("refused".into()))
        } else {
            Ok(HttpResponse { status: 200, body: "[]".into() })
        }
    });
    let dir = common::data_dir();
    let r = router(common::state_with(&dir, FaersClient::fixture(dir.join("faers")), vec![remote("half", t)], ServiceConfig::default()));
    let up = common::post_text(&r, "/api/annotate/bulk", "This one works.\nThis one fails.").await;
    let sid = up.body["session_id"].as_str().unwrap();
    let mut res = common::get(&r, &format!("/api/annotate/bulk/{sid}?model=half")).await;
    while res.body["status"] != "complete" {
        tokio::time::sleep(Duration::from_millis(20)).await;
        res = common::get(&r, &format!("/api/annotate/bulk/{sid}?model=half")).await;
    }
    let rows = res.body["rows"].as_array().unwrap();
    assert!(rows[0].get("error").is_none());
    assert!(rows[1]["error"].as_str().unwrap().contains("retriable"));
}
