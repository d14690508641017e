//! Case-report ingestion, sentence splitting, ADE sentence classification
//! and the end-to-end extraction pipeline.

pub mod classifier;
pub mod pipeline;
pub mod sentence;

use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classifier::{AdeLabel, BaselineClassifier, SentenceClassifier};
pub use pipeline::{run_pipeline, NormalizerConfig, PipelineOutput, RunReport};
pub use sentence::{split_sentences, Sentence};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("training data: {0}")]
    Training(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One publication record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub pmid: String,
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
    #[serde(rename = "year")]
    pub pub_year: i32,
    #[serde(default)]
    pub keywords: Vec<String>,
    pub language: String,
    #[serde(default)]
    pub pub_types: Vec<String>,
}

pub const MIN_YEAR: i32 = 1800;
pub const MAX_YEAR: i32 = 2100;

/// Retrieval keywords for corpora that were not pre-filtered.
pub const ADVERSE_KEYWORDS: [&str; 4] = ["adverse event", "adverse effect", "adverse reaction", "side effect"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    Malformed(String),
    DuplicatePmid(String),
    NotEnglish,
    NotCaseReport,
    MissingAbstract,
    NoAdverseKeyword,
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::Malformed(m) => write!(f, "malformed record: {m}"),
            RejectReason::DuplicatePmid(p) => write!(f, "duplicate pmid {p}"),
            RejectReason::NotEnglish => f.write_str("language is not English"),
            RejectReason::NotCaseReport => f.write_str("publication type lacks \"Case Reports\""),
            RejectReason::MissingAbstract => f.write_str("abstract missing or empty"),
            RejectReason::NoAdverseKeyword => f.write_str("no adverse-event keyword"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// 1-based line number in the input.
    pub line: usize,
    pub pmid: Option<String>,
    pub reason: RejectReason,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestOptions {
    /// Require one of [`ADVERSE_KEYWORDS`] in title, abstract or keywords.
    pub keyword_filter: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusParse {
    pub reports: Vec<CaseReport>,
    pub rejections: Vec<Rejection>,
}

impl CorpusParse {
    pub fn accepted(&self) -> usize {
        self.reports.len()
    }

    pub fn rejected(&self) -> usize {
        self.rejections.len()
    }
}

#[derive(Deserialize)]
struct WireRecord {
    pmid: serde_json::Value,
    #[serde(default)]
    title: Option<String>,
    #[serde(default, rename = "abstract")]
    abstract_text: Option<String>,
    year: i64,
    #[serde(default)]
    keywords: Option<Vec<String>>,
    #[serde(default)]
    language: Option<String>,
    #[serde(default)]
    pub_types: Option<Vec<String>>,
}

fn is_english(code: &str) -> bool {
    matches!(code.trim().to_ascii_lowercase().as_str(), "en" | "eng" | "english")
}

fn mentions_adverse_keyword(r: &CaseReport) -> bool {
    let hay = format!("{} {} {}", r.title, r.abstract_text, r.keywords.join(" ")).to_lowercase();
    let hay = hay.split_whitespace().collect::<Vec<_>>().join(" ");
    ADVERSE_KEYWORDS.iter().any(|k| hay.contains(k))
}

fn decode(line: &str) -> Result<CaseReport, RejectReason> {
    let w: WireRecord = serde_json::from_str(line).map_err(|e| RejectReason::Malformed(e.to_string()))?;
    let pmid = match &w.pmid {
        serde_json::Value::String(s) => s.trim().to_string(),
        serde_json::Value::Number(n) => n.to_string(),
        _ => return Err(RejectReason::Malformed("pmid must be a string or number".into())),
    };
    if pmid.is_empty() {
        return Err(RejectReason::Malformed("empty pmid".into()));
    }
    if !(MIN_YEAR as i64..=MAX_YEAR as i64).contains(&w.year) {
        return Err(RejectReason::Malformed(format!("year {} outside [{MIN_YEAR}, {MAX_YEAR}]", w.year)));
    }
    Ok(CaseReport {
        pmid,
        title: w.title.unwrap_or_default(),
        abstract_text: w.abstract_text.unwrap_or_default(),
        pub_year: w.year as i32,
        keywords: w.keywords.unwrap_or_default(),
        language: w.language.unwrap_or_default(),
        pub_types: w.pub_types.unwrap_or_default(),
    })
}

fn screen(r: &CaseReport, opts: IngestOptions) -> Result<(), RejectReason> {
    if !is_english(&r.language) {
        return Err(RejectReason::NotEnglish);
    }
    if !r.pub_types.iter().any(|t| t.trim().eq_ignore_ascii_case("case reports")) {
        return Err(RejectReason::NotCaseReport);
    }
    if r.abstract_text.trim().is_empty() {
        return Err(RejectReason::MissingAbstract);
    }
    if opts.keyword_filter && !mentions_adverse_keyword(r) {
        return Err(RejectReason::NoAdverseKeyword);
    }
    Ok(())
}

/// Parses a line-delimited corpus. Bad lines and filtered records are
/// reported and skipped; accepted records keep input order. A repeated pmid
/// rejects the later record.
pub fn parse_corpus<R: BufRead>(input: R, opts: IngestOptions) -> std::io::Result<CorpusParse> {
    let mut out = CorpusParse::default();
    let mut seen: HashSet<String> = HashSet::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        let report = match decode(&line) {
            Ok(r) => r,
            Err(reason) => {
                log::warn!("corpus line {lineno}: {reason}");
                out.rejections.push(Rejection { line: lineno, pmid: None, reason });
                continue;
            }
        };
        let verdict = if seen.contains(&report.pmid) {
            Err(RejectReason::DuplicatePmid(report.pmid.clone()))
        } else {
            screen(&report, opts)
        };
        match verdict {
            Ok(()) => {
                seen.insert(report.pmid.clone());
                out.reports.push(report);
            }
            Err(reason) => {
                log::debug!("corpus line {lineno} (pmid {}): {reason}", report.pmid);
                out.rejections.push(Rejection { line: lineno, pmid: Some(report.pmid), reason });
            }
        }
    }
    Ok(out)
}

pub fn parse_corpus_str(text: &str, opts: IngestOptions) -> CorpusParse {
    parse_corpus(text.as_bytes(), opts).expect("reading from memory cannot fail")
}

/// Incremental update: records in `newer` replace same-pmid records in
/// `existing` in place; the rest are appended in order.
pub fn merge_corpus(existing: Vec<CaseReport>, newer: Vec<CaseReport>) -> Vec<CaseReport> {
    let mut out = existing;
    let mut at: HashMap<String, usize> = out.iter().enumerate().map(|(i, r)| (r.pmid.clone(), i)).collect();
    for r in newer {
        match at.get(&r.pmid) {
            Some(&i) => out[i] = r,
            None => {
                at.insert(r.pmid.clone(), out.len());
                out.push(r);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(pmid: &str, abs: &str, lang: &str, types: &[&str]) -> String {
        serde_json::json!({
            "pmid": pmid, "title": "T", "abstract": abs, "year": 2020,
            "keywords": [], "language": lang, "pub_types": types, "mesh": ["ignored"]
        })
        .to_string()
    }

    #[test]
    fn filters_and_order() {
        let text = [
            line("1", "A.", "eng", &["Case Reports"]),
            line("2", "", "eng", &["Case Reports"]),
            line("3", "B.", "ger", &["Case Reports"]),
            line("4", "C.", "en", &["Journal Article", "Case Reports"]),
            line("5", "D.", "eng", &["Journal Article"]),
        ]
        .join("\n");
        let p = parse_corpus_str(&text, IngestOptions::default());
        assert_eq!(p.reports.iter().map(|r| r.pmid.as_str()).collect::<Vec<_>>(), vec!["1", "4"]);
        let reasons: Vec<_> = p.rejections.iter().map(|r| (r.line, r.reason.clone())).collect();
        assert_eq!(reasons, vec![
            (2, RejectReason::MissingAbstract),
            (3, RejectReason::NotEnglish),
            (5, RejectReason::NotCaseReport)
        ]);
    }

    #[test]
    fn malformed_lines_continue() {
        let text = format!("{{not json\n{}\n{{\"pmid\":\"9\",\"year\":1700}}", line("1", "A.", "eng", &["Case Reports"]));
        let p = parse_corpus_str(&text, IngestOptions::default());
        assert_eq!(p.accepted(), 1);
        assert_eq!(p.rejections.iter().map(|r| r.line).collect::<Vec<_>>(), vec![1, 3]);
        assert!(p.rejections.iter().all(|r| matches!(r.reason, RejectReason::Malformed(_))));
    }

    #[test]
    fn duplicate_rejects_later() {
        let text = [line("1", "first.", "eng", &["Case Reports"]), line("1", "second.", "eng", &["Case Reports"])].join("\n");
        let p = parse_corpus_str(&text, IngestOptions::default());
        assert_eq!(p.reports[0].abstract_text, "first.");
        assert_eq!(p.rejections[0].reason, RejectReason::DuplicatePmid("1".into()));
    }

    #[test]
    fn empty_stream() {
        let p = parse_corpus_str("", IngestOptions::default());
        assert_eq!((p.accepted(), p.rejected()), (0, 0));
    }

    #[test]
    fn keyword_filter() {
        let text = [
            line("1", "A serious Adverse  Reaction.", "eng", &["Case Reports"]),
            line("2", "Nothing relevant.", "eng", &["Case Reports"]),
        ]
        .join("\n");
        let p = parse_corpus_str(&text, IngestOptions { keyword_filter: true });
        assert_eq!(p.accepted(), 1);
        assert_eq!(p.rejections[0].reason, RejectReason::NoAdverseKeyword);
    }

    #[test]
    fn append_newest_wins() {
        let mk = |pmid: &str, abs: &str| parse_corpus_str(&line(pmid, abs, "eng", &["Case Reports"]), Default::default()).reports;
        let merged = merge_corpus([mk("1", "old."), mk("2", "two.")].concat(), [mk("1", "new."), mk("3", "three.")].concat());
        let got: Vec<_> = merged.iter().map(|r| (r.pmid.as_str(), r.abstract_text.as_str())).collect();
        assert_eq!(got, vec![("1", "new."), ("2", "two."), ("3", "three.")]);
    }
}
