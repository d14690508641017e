//! Search, statistics, article and drug-info endpoints.

use std::collections::BTreeMap;
use std::sync::Arc;

use axum::extract::{RawQuery, State};
use axum::Json;
use drugwatch_core::search::stats::BREAKDOWN_TOP_N;
use drugwatch_core::search::{CrossCell, Facet, TermCount, DEFAULT_TOP_N};
use drugwatch_core::text::{char_slice, find_word_occurrences};
use drugwatch_core::{AgeGroup, FaersError, Gender, QuerySpec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{ApiError, ApiResult};
use crate::params::{page, Params};
use crate::state::AppState;

pub const SUGGEST_LIMIT: usize = 10;
pub const PUBMED_URL: &str = "https://pubmed.ncbi.nlm.nih.gov";

type AppStateRef = State<Arc<AppState>>;

pub async fn suggest(State(app): AppStateRef, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let p = Params::parse(raw.as_deref());
    let kind = p.kind()?;
    let prefix = p.get("prefix").unwrap_or("").split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
    if prefix.is_empty() {
        return Err(ApiError::bad_request("`prefix` must have at least one character"));
    }
    let hits: Vec<Value> = app
        .index
        .suggest(kind, &prefix, SUGGEST_LIMIT)
        .into_iter()
        .map(|(term, count)| json!({ "term": term, "count": count }))
        .collect();
    Ok(Json(json!({ "kind": kind, "prefix": prefix, "suggestions": hits })))
}

fn top_n(p: &Params, key: &str, default: usize) -> ApiResult<usize> {
    match p.parse_opt::<usize>(key)?.unwrap_or(default) {
        0 => Err(ApiError::bad_request(format!("`{key}` must be at least 1"))),
        n => Ok(n.min(1000)),
    }
}

pub async fn search(State(app): AppStateRef, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let p = Params::parse(raw.as_deref());
    let (_, q) = p.canonical_query(&app.synonyms)?;
    let (offset, size) = p.page()?;
    let n = top_n(&p, "n", DEFAULT_TOP_N)?;
    let pmids = app.index.search_articles(&q);
    let yearly: Vec<Value> =
        app.index.yearly_counts(&q).into_iter().map(|(year, count)| json!({ "year": year, "count": count })).collect();
    Ok(Json(json!({
        "query": q,
        "total": pmids.len(),
        "offset": offset,
        "page_size": size,
        "pmids": page(&pmids, offset, size),
        "yearly": yearly,
        "top_terms": app.index.top_cooccurring(&q, n),
    })))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    Pubmed,
    Faers,
}

/// The FAERS side answers for exactly one term and no further filters.
fn source(p: &Params, q: &QuerySpec) -> ApiResult<Source> {
    match p.get("source").unwrap_or("pubmed") {
        "pubmed" => Ok(Source::Pubmed),
        "faers" => {
            if q.terms.len() != 1 || !q.cofilter.is_empty() || q.age.is_some() || q.gender.is_some() || q.year_range.is_some()
            {
                return Err(ApiError::bad_request("source=faers takes exactly one term and no cofilter, age, gender or year filters")
                    .with("source", "faers"));
            }
            Ok(Source::Faers)
        }
        other => Err(ApiError::bad_request(format!("unknown source `{other}`; expected pubmed or faers"))),
    }
}

async fn faers_call<T: Send + 'static>(
    app: &Arc<AppState>,
    f: impl FnOnce(&drugwatch_core::FaersClient) -> Result<T, FaersError> + Send + 'static,
) -> ApiResult<T> {
    let client = app.faers.clone();
    tokio::task::spawn_blocking(move || f(&client))
        .await
        .map_err(|e| ApiError::new(axum::http::StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(ApiError::from)
}

#[derive(Serialize)]
struct DemographicCell {
    age_group: AgeGroup,
    gender: Gender,
    count: usize,
}

fn cells(map: BTreeMap<(AgeGroup, Gender), usize>) -> Vec<DemographicCell> {
    map.into_iter().map(|((age_group, gender), count)| DemographicCell { age_group, gender, count }).collect()
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Pubmed => "pubmed",
        Source::Faers => "faers",
    }
}

pub async fn demographics(State(app): AppStateRef, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let p = Params::parse(raw.as_deref());
    let (_, q) = p.canonical_query(&app.synonyms)?;
    let src = source(&p, &q)?;
    let map = match src {
        Source::Pubmed => app.index.demographic_distribution(&q),
        Source::Faers => {
            let (kind, term) = (q.kind, q.terms[0].clone());
            faers_call(&app, move |c| c.demographics(kind, &term)).await?
        }
    };
    let total: usize = map.values().sum();
    Ok(Json(json!({ "source": source_name(src), "query": q, "total": total, "cells": cells(map) })))
}

fn facet_values(p: &Params) -> ApiResult<(&'static str, Vec<Facet>)> {
    let value = p.get("value");
    match p.get("facet").unwrap_or("age_group") {
        "age_group" => {
            let groups = match value {
                Some(v) => vec![v.parse::<AgeGroup>()?],
                None => AgeGroup::ALL.to_vec(),
            };
            Ok(("age_group", groups.into_iter().map(Facet::AgeGroup).collect()))
        }
        "gender" => {
            let genders = match value {
                Some(v) => vec![v.parse::<Gender>().map_err(ApiError::bad_request)?],
                None => Gender::ALL.to_vec(),
            };
            Ok(("gender", genders.into_iter().map(Facet::Gender).collect()))
        }
        other => Err(ApiError::bad_request(format!("unknown facet `{other}`; expected age_group or gender"))),
    }
}

fn facet_value(f: Facet) -> &'static str {
    match f {
        Facet::AgeGroup(g) => g.as_str(),
        Facet::Gender(g) => g.as_str(),
    }
}

pub async fn breakdown(State(app): AppStateRef, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let p = Params::parse(raw.as_deref());
    let (_, q) = p.canonical_query(&app.synonyms)?;
    let src = source(&p, &q)?;
    let (facet_name, facets) = facet_values(&p)?;
    let n = top_n(&p, "n", BREAKDOWN_TOP_N)?;
    let explicit = p.get("value").is_some();
    let groups: Vec<(Facet, Vec<TermCount>)> = match src {
        Source::Pubmed => facets
            .into_iter()
            .map(|f| {
                let mut top = app.index.group_breakdown(&q, f);
                top.truncate(n);
                (f, top)
            })
            .collect(),
        Source::Faers => {
            let (kind, term) = (q.kind, q.terms[0].clone());
            let facets: Vec<Facet> = if explicit {
                facets
            } else {
                facets.into_iter().filter(|f| *f != Facet::AgeGroup(AgeGroup::Unknown)).collect()
            };
            faers_call(&app, move |c| {
                facets.into_iter().map(|f| Ok((f, c.group_breakdown(kind, &term, f, n)?))).collect::<Result<Vec<_>, _>>()
            })
            .await?
        }
    };
    let groups: Vec<Value> = groups
        .into_iter()
        .filter(|(_, top)| explicit || !top.is_empty())
        .map(|(f, top)| json!({ "value": facet_value(f), "top": top }))
        .collect();
    Ok(Json(json!({ "source": source_name(src), "query": q, "facet": facet_name, "groups": groups })))
}

pub async fn crossbreakdown(State(app): AppStateRef, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let p = Params::parse(raw.as_deref());
    let (_, q) = p.canonical_query(&app.synonyms)?;
    let src = source(&p, &q)?;
    let k = top_n(&p, "k", 5)?;
    let map: BTreeMap<(AgeGroup, Gender), CrossCell> = match src {
        Source::Pubmed => app.index.cross_breakdown(&q, k),
        Source::Faers => {
            let (kind, term) = (q.kind, q.terms[0].clone());
            faers_call(&app, move |c| c.cross_breakdown(kind, &term, k)).await?
        }
    };
    let cells: Vec<Value> = map
        .into_iter()
        .map(|((age_group, gender), cell)| {
            json!({ "age_group": age_group, "gender": gender, "count": cell.count, "top": cell.top })
        })
        .collect();
    Ok(Json(json!({ "source": source_name(src), "query": q, "k": k, "cells": cells })))
}

/// `[start, end)` char offsets into the abstract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Highlight {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArticleView {
    pub pmid: String,
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
    pub keywords: Vec<String>,
    pub year: i32,
    pub link: String,
    pub highlights: Vec<Highlight>,
}

/// Whole-word, case-insensitive occurrences of any term, leftmost first and
/// longest at equal starts, without overlaps.
pub fn highlight_spans(text: &str, terms: &[String]) -> Vec<Highlight> {
    let mut hits: Vec<(usize, usize)> = terms.iter().flat_map(|t| find_word_occurrences(text, t)).collect();
    hits.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut out: Vec<Highlight> = Vec::new();
    for (start, end) in hits {
        if out.last().is_none_or(|h| start >= h.end) {
            out.push(Highlight { start, end });
        }
    }
    out
}

/// Terms to highlight: the query terms as entered and in canonical form.
fn highlight_terms(raw: &QuerySpec, canonical: &QuerySpec) -> Vec<String> {
    let mut terms: Vec<String> = Vec::new();
    for t in raw.terms.iter().chain(&raw.cofilter).chain(&canonical.terms).chain(&canonical.cofilter) {
        let t = t.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
        if !t.is_empty() && !terms.contains(&t) {
            terms.push(t);
        }
    }
    terms
}

pub async fn articles(State(app): AppStateRef, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let p = Params::parse(raw.as_deref());
    let (raw_q, q) = p.canonical_query(&app.synonyms)?;
    let (offset, size) = p.page()?;
    let terms = highlight_terms(&raw_q, &q);
    let pmids = app.index.search_articles(&q);
    let years: BTreeMap<&str, i32> = app.index.records().iter().map(|r| (r.pmid.as_str(), r.year)).collect();
    let views: Vec<ArticleView> = page(&pmids, offset, size)
        .into_iter()
        .map(|pmid| {
            let link = format!("{PUBMED_URL}/{pmid}/");
            match app.articles.get(&pmid) {
                Some(a) => ArticleView {
                    highlights: highlight_spans(&a.abstract_text, &terms),
                    pmid,
                    title: a.title.clone(),
                    abstract_text: a.abstract_text.clone(),
                    keywords: a.keywords.clone(),
                    year: a.pub_year,
                    link,
                },
                None => ArticleView {
                    year: years.get(pmid.as_str()).copied().unwrap_or_default(),
                    pmid,
                    title: String::new(),
                    abstract_text: String::new(),
                    keywords: Vec::new(),
                    link,
                    highlights: Vec::new(),
                },
            }
        })
        .collect();
    Ok(Json(json!({ "query": q, "total": pmids.len(), "offset": offset, "page_size": size, "articles": views })))
}

pub async fn druginfo(State(app): AppStateRef, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let p = Params::parse(raw.as_deref());
    let name = p.get("name").ok_or_else(|| ApiError::bad_request("`name` is required"))?;
    let card = app
        .druginfo
        .lookup(name, &app.synonyms)
        .ok_or_else(|| ApiError::not_found(format!("no drug information for `{name}`")))?;
    Ok(Json(serde_json::to_value(card).unwrap_or_default()))
}

/// Checks the highlight invariant: each span's text equals one of `terms`
/// ignoring case.
pub fn highlights_match(text: &str, spans: &[Highlight], terms: &[String]) -> bool {
    spans.iter().all(|h| terms.iter().any(|t| char_slice(text, h.start, h.end).to_lowercase() == *t))
}
