use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use drugwatch_core::{Extractor, FaersClient, RemoteConfig, RemoteExtractor, UreqTransport};
use drugwatch_server::{AppState, DataPaths, ServiceConfig};

use crate::{read_input, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaersModeArg {
    Live,
    Fixture,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Normalized record file produced by `ingest`.
    #[arg(long)]
    records: PathBuf,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    #[arg(long, value_enum, default_value = "live")]
    faers_mode: FaersModeArg,
    /// Recorded FAERS responses for fixture mode [default: <data-dir>/faers].
    #[arg(long)]
    faers_fixtures: Option<PathBuf>,
    /// Endpoint of a remote extraction model.
    #[arg(long)]
    remote_extractor: Option<String>,
    /// Name of the remote model, as sent to the endpoint and shown to clients.
    #[arg(long, default_value = "remote")]
    remote_model: String,
    /// Directory with the bundled lexicons, synonyms, drug cards and the
    /// preloaded annotation dataset.
    #[arg(long, default_value = "data")]
    data_dir: PathBuf,
    /// Corpus file supplying article titles and abstracts
    /// [default: <data-dir>/corpus/case_reports_50.jsonl].
    #[arg(long)]
    corpus: Option<PathBuf>,
}

pub fn run(a: ServeArgs) -> CliResult {
    read_input(&a.records)?;
    let mut paths = DataPaths::bundled(&a.data_dir);
    paths.records = a.records.clone();
    if let Some(c) = &a.corpus {
        paths.corpus = Some(c.clone());
    }
    let fixtures = a.faers_fixtures.clone().unwrap_or_else(|| paths.faers_fixtures.clone());
    let faers = match a.faers_mode {
        FaersModeArg::Live => FaersClient::live(),
        FaersModeArg::Fixture => FaersClient::fixture(fixtures),
    };
    let mut extra: Vec<Arc<dyn Extractor>> = Vec::new();
    if let Some(url) = &a.remote_extractor {
        let remote = RemoteExtractor::new(RemoteConfig::new(url.clone(), a.remote_model.clone()), Arc::new(UreqTransport::default()))
            .map_err(|e| CliError::failed(e.to_string()))?;
        extra.push(Arc::new(remote));
    }
    let config = ServiceConfig::from_env().map_err(CliError::failed)?;
    let state = AppState::load(&paths, faers, extra, config).map_err(CliError::failed)?;
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::failed(e.to_string()))?;
    let addr = SocketAddr::new(a.host, a.port);
    eprintln!("drugwatch: serving {} records on http://{addr}", state.index.len());
    runtime
        .block_on(drugwatch_server::serve(Arc::new(state), addr))
        .map_err(|e| CliError::failed(format!("server error: {e}")))
}
