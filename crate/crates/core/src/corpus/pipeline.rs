use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::classifier::SentenceClassifier;
use super::sentence::split_sentences;
use super::CaseReport;
use crate::extraction::{EventType, Extractor};
use crate::normalize::{merge_by_drug, NormalizedEventRecord, SourcedEvent, SynonymTable};

#[derive(Debug, Clone, Default)]
pub struct NormalizerConfig {
    pub synonyms: SynonymTable,
}

/// Stage counts of one pipeline run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub articles_in: usize,
    /// Articles with at least one ADE-positive sentence.
    pub articles_ade: usize,
    pub sentences_total: usize,
    pub sentences_ade: usize,
    pub records_out: usize,
    /// ADE events dropped at merge because they named no drug.
    pub events_without_drug: usize,
    pub extraction_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionFailure {
    pub pmid: String,
    pub sentence_index: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PipelineOutput {
    pub records: Vec<NormalizedEventRecord>,
    pub report: RunReport,
    pub failures: Vec<ExtractionFailure>,
}

/// Split, classify, extract on positive sentences, then merge by drug.
/// Only ADE events feed the records. Records come out in corpus order,
/// then by drug.
pub fn run_pipeline(
    corpus: &[CaseReport],
    classifier: &dyn SentenceClassifier,
    extractor: &dyn Extractor,
    config: &NormalizerConfig,
) -> PipelineOutput {
    let mut out = PipelineOutput::default();
    out.report.articles_in = corpus.len();
    for article in corpus {
        let sentences = split_sentences(&article.pmid, &article.abstract_text);
        out.report.sentences_total += sentences.len();
        let mut events = Vec::new();
        let mut positive = 0;
        for sentence in &sentences {
            if !classifier.classify(&sentence.text).is_ade {
                continue;
            }
            positive += 1;
            match extractor.extract(&sentence.text) {
                Ok(extraction) => events.extend(
                    extraction
                        .events
                        .into_iter()
                        .enumerate()
                        .filter(|(_, e)| e.event_type == EventType::Ade)
                        .map(|(ordinal, event)| SourcedEvent { sentence_index: sentence.index, ordinal, event }),
                ),
                Err(e) => {
                    log::warn!("extraction failed for pmid {} sentence {}: {e}", article.pmid, sentence.index);
                    out.failures.push(ExtractionFailure {
                        pmid: article.pmid.clone(),
                        sentence_index: sentence.index,
                        message: e.to_string(),
                    });
                }
            }
        }
        out.report.sentences_ade += positive;
        if positive > 0 {
            out.report.articles_ade += 1;
        }
        let merged = merge_by_drug(&article.pmid, article.pub_year, &events, &config.synonyms);
        out.report.events_without_drug += merged.events_without_drug;
        out.records.extend(merged.records);
    }
    out.report.records_out = out.records.len();
    out.report.extraction_failures = out.failures.len();
    out
}

/// Incremental update of a record store: records of re-processed articles
/// are replaced, all others kept.
pub fn append_records(
    existing: Vec<NormalizedEventRecord>,
    fresh: Vec<NormalizedEventRecord>,
    reprocessed: &HashSet<String>,
) -> Vec<NormalizedEventRecord> {
    let mut out: Vec<_> = existing.into_iter().filter(|r| !reprocessed.contains(&r.pmid)).collect();
    out.extend(fresh);
    out
}
