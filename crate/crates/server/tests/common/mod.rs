#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::Router;
use drugwatch_core::{Extractor, FaersClient};
use drugwatch_server::contract::{call, Recorded};
use drugwatch_server::{router, AppState, DataPaths, ServiceConfig};
use serde_json::Value;

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn state_with(dir: &Path, faers: FaersClient, extra: Vec<Arc<dyn Extractor>>, config: ServiceConfig) -> Arc<AppState> {
    Arc::new(AppState::load(&DataPaths::bundled(dir), faers, extra, config).expect("bundled data loads"))
}

pub fn bundled_router() -> Router {
    let dir = data_dir();
    router(state_with(&dir, FaersClient::fixture(dir.join("faers")), Vec::new(), ServiceConfig::default()))
}

pub async fn get(r: &Router, uri: &str) -> Recorded {
    call(r, "GET", uri, None).await
}

pub async fn post_json(r: &Router, uri: &str, body: Value) -> Recorded {
    call(r, "POST", uri, Some(("application/json", body.to_string().into_bytes()))).await
}

pub async fn post_text(r: &Router, uri: &str, text: &str) -> Recorded {
    call(r, "POST", uri, Some(("text/plain", text.as_bytes().to_vec()))).await
}
