use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{normalize_age, normalize_gender, normalize_term, AgeValue, Gender, SynonymTable, TermKind};
use crate::extraction::{ArgumentRole, PharmaEvent};

/// Article-level, per-drug search record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedEventRecord {
    pub pmid: String,
    pub drug: String,
    pub effects: BTreeSet<String>,
    pub age: AgeValue,
    pub gender: Gender,
    pub year: i32,
    /// `(sentence index, event ordinal within the sentence)` of every event
    /// that named this drug.
    pub source_sentences: Vec<(usize, usize)>,
}

/// An event together with where it came from in the article.
#[derive(Debug, Clone, PartialEq)]
pub struct SourcedEvent {
    pub sentence_index: usize,
    pub ordinal: usize,
    pub event: PharmaEvent,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MergeOutcome {
    pub records: Vec<NormalizedEventRecord>,
    /// Events that carried no usable `treatment.drug` span.
    pub events_without_drug: usize,
}

fn event_age(event: &PharmaEvent) -> AgeValue {
    let candidates = |role| event.spans(role).iter().map(|s| normalize_age(&s.text));
    let mut best = AgeValue::Unknown;
    for age in candidates(ArgumentRole::SubjectAge).chain(candidates(ArgumentRole::Subject)) {
        if age.specificity() > best.specificity() {
            best = age;
        }
    }
    best
}

fn event_gender(event: &PharmaEvent) -> Gender {
    for role in [ArgumentRole::SubjectGender, ArgumentRole::Subject] {
        let joined: Vec<&str> = event.spans(role).iter().map(|s| s.text.as_str()).collect();
        let g = normalize_gender(&joined.join(" "));
        if g != Gender::Unknown {
            return g;
        }
    }
    Gender::Unknown
}

/// Merges one article's events into one record per canonical drug.
///
/// Effects are unioned over the events naming the drug. Age and gender are
/// resolved once for the whole article: the most specific known value wins
/// (exact > range > unknown), earliest sentence first on ties.
pub fn merge_by_drug(pmid: &str, year: i32, events: &[SourcedEvent], synonyms: &SynonymTable) -> MergeOutcome {
    let mut ordered: Vec<&SourcedEvent> = events.iter().collect();
    ordered.sort_by_key(|e| (e.sentence_index, e.ordinal));

    let mut age = AgeValue::Unknown;
    let mut gender = Gender::Unknown;
    for e in &ordered {
        let a = event_age(&e.event);
        if a.specificity() > age.specificity() {
            age = a;
        }
        if gender == Gender::Unknown {
            gender = event_gender(&e.event);
        }
    }

    let mut by_drug: BTreeMap<String, (BTreeSet<String>, BTreeSet<(usize, usize)>)> = BTreeMap::new();
    let mut events_without_drug = 0;
    for e in &ordered {
        let drugs: BTreeSet<String> = e
            .event
            .spans(ArgumentRole::TreatmentDrug)
            .iter()
            .filter_map(|s| normalize_term(&s.text, TermKind::Drug, synonyms).ok())
            .collect();
        if drugs.is_empty() {
            events_without_drug += 1;
            continue;
        }
        let effects: BTreeSet<String> = e
            .event
            .spans(ArgumentRole::Effect)
            .iter()
            .filter_map(|s| normalize_term(&s.text, TermKind::Effect, synonyms).ok())
            .collect();
        for drug in drugs {
            let entry = by_drug.entry(drug).or_default();
            entry.0.extend(effects.iter().cloned());
            entry.1.insert((e.sentence_index, e.ordinal));
        }
    }

    let records = by_drug
        .into_iter()
        .map(|(drug, (effects, sources))| NormalizedEventRecord {
            pmid: pmid.to_string(),
            drug,
            effects,
            age,
            gender,
            year,
            source_sentences: sources.into_iter().collect(),
        })
        .collect();
    MergeOutcome { records, events_without_drug }
}

/// Serializes records as one JSON object per line.
pub fn records_to_jsonl(records: &[NormalizedEventRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records always serialize"));
        out.push('\n');
    }
    out
}

/// Parses a line-delimited record store. Errors name the 1-based line.
pub fn parse_records_jsonl(text: &str) -> Result<Vec<NormalizedEventRecord>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraction::EventType;
    use ArgumentRole::*;

    fn ev(sentence_index: usize, drug: &str, effect: &str) -> SourcedEvent {
        SourcedEvent {
            sentence_index,
            ordinal: 0,
            event: PharmaEvent::new(EventType::Ade)
                .with(Treatment, drug)
                .with(TreatmentDrug, drug)
                .with(Effect, effect),
        }
    }

    #[test]
    fn same_drug_unions_effects() {
        let out = merge_by_drug("1", 2020, &[ev(0, "aspirin", "rash"), ev(1, "Aspirin", "nausea")], &SynonymTable::new());
        assert_eq!(out.records.len(), 1);
        let effects: Vec<&str> = out.records[0].effects.iter().map(String::as_str).collect();
        assert_eq!(effects, vec!["nausea", "rash"]);
        assert_eq!(out.records[0].source_sentences, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn one_record_per_drug() {
        let out = merge_by_drug("1", 2020, &[ev(0, "aspirin", "rash"), ev(0, "ibuprofen", "rash")], &SynonymTable::new());
        let drugs: Vec<&str> = out.records.iter().map(|r| r.drug.as_str()).collect();
        assert_eq!(drugs, vec!["aspirin", "ibuprofen"]);
    }

    #[test]
    fn most_specific_age_wins() {
        let mut first = ev(0, "aspirin", "rash");
        first.event.push(Subject, crate::extraction::Span::new("a child"));
        let mut second = ev(1, "aspirin", "fever");
        second.event.push(Subject, crate::extraction::Span::new("a 6 year old girl"));
        second.event.push(SubjectAge, crate::extraction::Span::new("6 year old"));
        let out = merge_by_drug("1", 2020, &[second.clone(), first.clone()], &SynonymTable::new());
        assert_eq!(out.records[0].age, AgeValue::Exact(6.0));
        assert_eq!(out.records[0].gender, Gender::Female);

        let mut unknown = ev(0, "aspirin", "rash");
        unknown.event.push(Subject, crate::extraction::Span::new("the patient"));
        let out = merge_by_drug("1", 2020, &[unknown, second], &SynonymTable::new());
        assert_eq!(out.records[0].age, AgeValue::Exact(6.0));
    }

    #[test]
    fn tie_goes_to_earliest_sentence() {
        let mut a = ev(3, "aspirin", "rash");
        a.event.push(Subject, crate::extraction::Span::new("a 40-year-old man"));
        let mut b = ev(1, "aspirin", "rash");
        b.event.push(Subject, crate::extraction::Span::new("a 30-year-old woman"));
        let out = merge_by_drug("1", 2020, &[a, b], &SynonymTable::new());
        assert_eq!(out.records[0].age, AgeValue::Exact(30.0));
        assert_eq!(out.records[0].gender, Gender::Female);
    }

    #[test]
    fn events_without_drug_are_counted() {
        let no_drug = SourcedEvent {
            sentence_index: 0,
            ordinal: 0,
            event: PharmaEvent::new(EventType::Ade).with(Effect, "rash"),
        };
        let out = merge_by_drug("1", 2020, &[no_drug], &SynonymTable::new());
        assert!(out.records.is_empty());
        assert_eq!(out.events_without_drug, 1);
    }
}
