//! REST service over the DrugWatch core: search, statistics, article and
//! drug-info lookups, and live/bulk annotation with in-memory sessions.

pub mod annotate;
pub mod config;
pub mod contract;
pub mod data;
pub mod error;
pub mod params;
pub mod search;
pub mod session;
pub mod state;

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::DefaultBodyLimit;
use axum::routing::{get, post};
use axum::Router;

pub use config::ServiceConfig;
pub use data::DataPaths;
pub use error::ApiError;
pub use state::AppState;

pub fn router(state: Arc<AppState>) -> Router {
    // One byte over the limit so the upload handler can answer 413 itself.
    let limit = state.config.max_upload_bytes.saturating_add(1);
    Router::new()
        .route("/api/suggest", get(search::suggest))
        .route("/api/search", get(search::search))
        .route("/api/demographics", get(search::demographics))
        .route("/api/breakdown", get(search::breakdown))
        .route("/api/crossbreakdown", get(search::crossbreakdown))
        .route("/api/articles", get(search::articles))
        .route("/api/druginfo", get(search::druginfo))
        .route("/api/annotate/live", post(annotate::live))
        .route("/api/annotate/bulk", post(annotate::upload))
        .route("/api/annotate/bulk/{sid}", get(annotate::results))
        .route("/api/annotate/bulk/{sid}/compare", post(annotate::compare))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .layer(DefaultBodyLimit::max(limit))
        .with_state(state)
}

pub async fn serve(state: Arc<AppState>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
