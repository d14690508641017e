use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use clap::{Args, Subcommand, ValueEnum};
use drugwatch_core::faers::{fixture_file_name, AgeUnit, CountField, FaersTermKind};
use drugwatch_core::search::Facet;
use drugwatch_core::{
    AgeGroup, FaersClient, FaersMode, FaersQuery, Gender, HttpRequest, HttpResponse, HttpTransport, TermKind,
    TransportError, UreqTransport,
};

use crate::synth::SyntheticFaers;
use crate::{CliError, CliResult};

#[derive(Debug, Subcommand)]
pub enum FaersCommand {
    /// Print the request URL and its fixture file name.
    Url(QueryArgs),
    /// Fetch counts, live or from recorded fixtures, and print them as JSON.
    Fetch {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, value_enum, default_value = "live")]
        mode: ModeArg,
        #[arg(long, default_value = "data/faers")]
        fixtures: PathBuf,
    },
    /// Record every response the service's FAERS views need for one term.
    /// The API key variable is ignored so recordings never contain it.
    Record(RecordArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Live,
    Fixture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    GenericName,
    BrandName,
    Reaction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountArg {
    GenericName,
    BrandName,
    Reaction,
    PatientSex,
    OnsetAge,
    Country,
    ReceiveDate,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    term: String,
    #[arg(long, value_enum)]
    count: CountArg,
    /// male, female or unknown.
    #[arg(long)]
    sex: Option<Gender>,
    /// Onset-age range as `lo:hi:unit`, unit one of decade, year, month,
    /// week, day, hour.
    #[arg(long)]
    onset_age: Option<String>,
    #[arg(long)]
    country: Option<String>,
    /// Receive-date range as `YYYYMMDD:YYYYMMDD`.
    #[arg(long)]
    received: Option<String>,
    #[arg(long)]
    limit: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RecordArgs {
    /// Search kind of the service query: drug or effect.
    #[arg(long)]
    kind: TermKind,
    #[arg(long)]
    term: String,
    #[arg(long)]
    out: PathBuf,
    /// Breakdown size per group.
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Top terms per cross-breakdown cell.
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Record invented responses instead of calling the live API.
    #[arg(long)]
    synthetic: bool,
}

fn parse_unit(s: &str) -> Result<AgeUnit, CliError> {
    Ok(match s {
        "decade" => AgeUnit::Decade,
        "year" => AgeUnit::Year,
        "month" => AgeUnit::Month,
        "week" => AgeUnit::Week,
        "day" => AgeUnit::Day,
        "hour" => AgeUnit::Hour,
        other => return Err(CliError::failed(format!("unknown age unit `{other}`"))),
    })
}

impl QueryArgs {
    fn query(&self) -> Result<FaersQuery, CliError> {
        let kind = match self.kind {
            KindArg::GenericName => FaersTermKind::GenericName,
            KindArg::BrandName => FaersTermKind::BrandName,
            KindArg::Reaction => FaersTermKind::Reaction,
        };
        let count = match self.count {
            CountArg::GenericName => CountField::GenericName,
            CountArg::BrandName => CountField::BrandName,
            CountArg::Reaction => CountField::Reaction,
            CountArg::PatientSex => CountField::PatientSex,
            CountArg::OnsetAge => CountField::OnsetAge,
            CountArg::Country => CountField::Country,
            CountArg::ReceiveDate => CountField::ReceiveDate,
        };
        let mut q = FaersQuery::new(kind, self.term.clone(), count);
        if let Some(s) = self.sex {
            q = q.with_sex(s);
        }
        if let Some(spec) = &self.onset_age {
            let parts: Vec<&str> = spec.split(':').collect();
            let [lo, hi, unit] = parts[..] else {
                return Err(CliError::failed(format!("--onset-age expects lo:hi:unit, got `{spec}`")));
            };
            let num = |v: &str| v.parse::<u32>().map_err(|e| CliError::failed(format!("--onset-age `{v}`: {e}")));
            q = q.with_onset_age(num(lo)?, num(hi)?, parse_unit(unit)?);
        }
        if let Some(c) = &self.country {
            q = q.with_country(c.clone());
        }
        if let Some(r) = &self.received {
            let (from, to) =
                r.split_once(':').ok_or_else(|| CliError::failed("--received expects YYYYMMDD:YYYYMMDD"))?;
            q = q.with_receive_date(from, to);
        }
        if self.limit.is_some() {
            q = q.with_limit(self.limit);
        }
        Ok(q)
    }
}

/// Passes requests through and keeps successful responses by URL.
struct Recorder {
    inner: Arc<dyn HttpTransport>,
    seen: Mutex<Vec<(String, String)>>,
}

impl HttpTransport for Recorder {
    fn send(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        let response = self.inner.send(request)?;
        if (200..300).contains(&response.status) || response.body.contains("NOT_FOUND") {
            self.seen.lock().unwrap_or_else(|e| e.into_inner()).push((request.url.clone(), response.body.clone()));
        }
        Ok(response)
    }
}

fn record(a: &RecordArgs) -> CliResult {
    let inner: Arc<dyn HttpTransport> =
        if a.synthetic { Arc::new(SyntheticFaers) } else { Arc::new(UreqTransport::default()) };
    let recorder = Arc::new(Recorder { inner, seen: Mutex::new(Vec::new()) });
    let client = FaersClient::new(FaersMode::Live, recorder.clone());
    let term = a.term.trim().to_lowercase();
    let fail = |e: drugwatch_core::FaersError| CliError::failed(e.to_string());
    client.demographics(a.kind, &term).map_err(fail)?;
    let facets = AgeGroup::ALL
        .into_iter()
        .filter(|g| *g != AgeGroup::Unknown)
        .map(Facet::AgeGroup)
        .chain(Gender::ALL.into_iter().map(Facet::Gender));
    for facet in facets {
        client.group_breakdown(a.kind, &term, facet, a.n).map_err(fail)?;
    }
    client.cross_breakdown(a.kind, &term, a.k).map_err(fail)?;
    std::fs::create_dir_all(&a.out).map_err(|e| CliError::failed(format!("{}: {e}", a.out.display())))?;
    let seen = recorder.seen.lock().unwrap_or_else(|e| e.into_inner()).clone();
    let mut written = std::collections::BTreeSet::new();
    for (url, body) in seen {
        let name = fixture_file_name(&url);
        if written.insert(name.clone()) {
            let path = a.out.join(&name);
            std::fs::write(&path, body).map_err(|e| CliError::failed(format!("{}: {e}", path.display())))?;
            println!("{name}\t{url}");
        }
    }
    Ok(())
}

pub fn run(cmd: FaersCommand) -> CliResult {
    match cmd {
        FaersCommand::Url(q) => {
            let url = drugwatch_core::faers::build_count_request(&q.query()?).map_err(|e| CliError::failed(e.to_string()))?;
            println!("{url}");
            println!("{}", fixture_file_name(&url));
            Ok(())
        }
        FaersCommand::Fetch { query, mode, fixtures } => {
            let client = match mode {
                ModeArg::Live => FaersClient::live(),
                ModeArg::Fixture => FaersClient::fixture(fixtures),
            };
            let result = client.fetch_counts(&query.query()?).map_err(|e| CliError::failed(e.to_string()))?;
            let entries: Vec<serde_json::Value> =
                result.entries.iter().map(|e| serde_json::json!({ "key": e.key, "count": e.count })).collect();
            println!("{}", serde_json::json!({ "entries": entries, "total": result.total, "disclaimer": result.disclaimer }));
            Ok(())
        }
        FaersCommand::Record(a) => record(&a),
    }
}
