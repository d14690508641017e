use std::collections::{BTreeMap, BTreeSet, HashSet};

use sha2::{Digest, Sha256};

use super::query::{AgeFilter, AgeGroup, QuerySpec};
use super::SearchError;
use crate::normalize::{NormalizedEventRecord, TermKind};

type Postings = BTreeMap<String, Vec<u32>>;

/// Immutable inverted index over records. Record ids are positions in the
/// input list.
#[derive(Debug, Clone, PartialEq)]
pub struct Index {
    records: Vec<NormalizedEventRecord>,
    drug_postings: Postings,
    effect_postings: Postings,
    /// term -> year -> number of distinct articles.
    drug_years: BTreeMap<String, BTreeMap<i32, usize>>,
    effect_years: BTreeMap<String, BTreeMap<i32, usize>>,
    build_stamp: String,
}

fn year_histogram(records: &[NormalizedEventRecord], postings: &Postings) -> BTreeMap<String, BTreeMap<i32, usize>> {
    postings
        .iter()
        .map(|(term, ids)| {
            let mut seen = HashSet::new();
            let mut hist = BTreeMap::new();
            for &id in ids {
                let r = &records[id as usize];
                if seen.insert(r.pmid.as_str()) {
                    *hist.entry(r.year).or_insert(0) += 1;
                }
            }
            (term.clone(), hist)
        })
        .collect()
}

impl Index {
    pub fn build(records: Vec<NormalizedEventRecord>) -> Result<Index, SearchError> {
        let mut keys = HashSet::new();
        let mut drug_postings = Postings::new();
        let mut effect_postings = Postings::new();
        let mut hasher = Sha256::new();
        for (id, r) in records.iter().enumerate() {
            if r.drug.is_empty() {
                return Err(SearchError::EmptyDrug(r.pmid.clone()));
            }
            if !keys.insert((r.pmid.as_str(), r.drug.as_str())) {
                return Err(SearchError::DuplicateRecord { pmid: r.pmid.clone(), drug: r.drug.clone() });
            }
            let id = id as u32;
            drug_postings.entry(r.drug.clone()).or_default().push(id);
            for e in &r.effects {
                effect_postings.entry(e.clone()).or_default().push(id);
            }
            hasher.update(serde_json::to_vec(r).expect("records always serialize"));
            hasher.update(b"\n");
        }
        let drug_years = year_histogram(&records, &drug_postings);
        let effect_years = year_histogram(&records, &effect_postings);
        Ok(Index {
            build_stamp: hex::encode(hasher.finalize()),
            records,
            drug_postings,
            effect_postings,
            drug_years,
            effect_years,
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[NormalizedEventRecord] {
        &self.records
    }

    pub fn record(&self, id: u32) -> &NormalizedEventRecord {
        &self.records[id as usize]
    }

    /// SHA-256 over the serialized records; equal for equal input.
    pub fn build_stamp(&self) -> &str {
        &self.build_stamp
    }

    pub fn postings(&self, kind: TermKind) -> &BTreeMap<String, Vec<u32>> {
        match kind {
            TermKind::Drug => &self.drug_postings,
            TermKind::Effect => &self.effect_postings,
        }
    }

    pub fn year_histogram(&self, kind: TermKind, term: &str) -> Option<&BTreeMap<i32, usize>> {
        match kind {
            TermKind::Drug => self.drug_years.get(term),
            TermKind::Effect => self.effect_years.get(term),
        }
    }

    /// Up to `limit` terms starting with `prefix`, most records first, then
    /// alphabetical.
    pub fn suggest(&self, kind: TermKind, prefix: &str, limit: usize) -> Vec<(String, usize)> {
        let mut hits: Vec<(String, usize)> = self
            .postings(kind)
            .range(prefix.to_string()..)
            .take_while(|(t, _)| t.starts_with(prefix))
            .map(|(t, ids)| (t.clone(), ids.len()))
            .collect();
        hits.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        hits.truncate(limit);
        hits
    }

    fn record_matches(&self, r: &NormalizedEventRecord, q: &QuerySpec) -> bool {
        let cofilter_ok = q.cofilter.is_empty()
            || match q.kind {
                TermKind::Drug => q.cofilter.iter().any(|t| r.effects.contains(t)),
                TermKind::Effect => q.cofilter.contains(&r.drug),
            };
        let age_ok = match q.age {
            None => true,
            Some(AgeFilter::Exact(v)) => r.age.contains(v),
            Some(AgeFilter::Group(g)) => AgeGroup::of(&r.age) == g,
        };
        cofilter_ok
            && age_ok
            && q.gender.is_none_or(|g| r.gender == g)
            && q.year_range.is_none_or(|(lo, hi)| lo <= r.year && r.year <= hi)
    }

    /// Ids of records matching `q`, ascending. Terms must already be
    /// canonical (see [`QuerySpec::canonicalize`]).
    pub fn matching_records(&self, q: &QuerySpec) -> Vec<u32> {
        let postings = self.postings(q.kind);
        let candidates: BTreeSet<u32> =
            q.terms.iter().filter_map(|t| postings.get(t)).flat_map(|ids| ids.iter().copied()).collect();
        candidates.into_iter().filter(|&id| self.record_matches(self.record(id), q)).collect()
    }

    /// Matching pmids, deduplicated, newest year first then pmid ascending.
    pub fn search_articles(&self, q: &QuerySpec) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut hits: Vec<(i32, &str)> = self
            .matching_records(q)
            .into_iter()
            .map(|id| self.record(id))
            .filter(|r| seen.insert(r.pmid.as_str()))
            .map(|r| (r.year, r.pmid.as_str()))
            .collect();
        hits.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        hits.into_iter().map(|(_, p)| p.to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::{AgeValue, Gender};

    pub(crate) fn rec(pmid: &str, drug: &str, effects: &[&str], year: i32) -> NormalizedEventRecord {
        NormalizedEventRecord {
            pmid: pmid.into(),
            drug: drug.into(),
            effects: effects.iter().map(|s| s.to_string()).collect(),
            age: AgeValue::Unknown,
            gender: Gender::Unknown,
            year,
            source_sentences: vec![(0, 0)],
        }
    }

    #[test]
    fn postings_count() {
        let idx = Index::build(vec![
            rec("1", "aspirin", &["rash"], 2019),
            rec("2", "aspirin", &[], 2019),
            rec("3", "aspirin", &["rash"], 2021),
        ])
        .unwrap();
        assert_eq!(idx.postings(TermKind::Drug)["aspirin"], vec![0, 1, 2]);
        assert_eq!(idx.postings(TermKind::Effect)["rash"], vec![0, 2]);
        assert_eq!(idx.year_histogram(TermKind::Drug, "aspirin").unwrap(), &BTreeMap::from([(2019, 2), (2021, 1)]));
    }

    #[test]
    fn empty_index() {
        let idx = Index::build(vec![]).unwrap();
        assert!(idx.search_articles(&QuerySpec::new(TermKind::Drug, ["aspirin"])).is_empty());
    }

    #[test]
    fn duplicate_pair_rejected() {
        let err = Index::build(vec![rec("1", "aspirin", &[], 2019), rec("1", "aspirin", &["rash"], 2019)]).unwrap_err();
        assert_eq!(err, SearchError::DuplicateRecord { pmid: "1".into(), drug: "aspirin".into() });
    }

    #[test]
    fn rebuild_is_identical() {
        let recs = vec![rec("1", "aspirin", &["rash"], 2019), rec("2", "ibuprofen", &["nausea"], 2020)];
        let a = Index::build(recs.clone()).unwrap();
        let b = Index::build(recs).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.build_stamp().len(), 64);
    }

    #[test]
    fn filters() {
        let mut r = rec("1", "aspirin", &["rash"], 2019);
        r.age = AgeValue::Range(2.0, 12.0);
        let idx = Index::build(vec![r]).unwrap();
        let q = QuerySpec::new(TermKind::Drug, ["aspirin"]);
        assert_eq!(idx.search_articles(&q.clone().with_age(AgeFilter::Exact(6.0))), vec!["1"]);
        assert!(idx.search_articles(&q.clone().with_gender(Gender::Female)).is_empty());
        assert!(idx.search_articles(&q.clone().with_years(2020, 2022)).is_empty());
        assert_eq!(idx.search_articles(&q.with_cofilter(["rash"])), vec!["1"]);
    }

    #[test]
    fn ordering() {
        let idx = Index::build(vec![
            rec("20", "aspirin", &[], 2019),
            rec("10", "aspirin", &[], 2019),
            rec("30", "aspirin", &[], 2021),
            rec("10", "ibuprofen", &[], 2019),
        ])
        .unwrap();
        assert_eq!(idx.search_articles(&QuerySpec::new(TermKind::Drug, ["aspirin", "ibuprofen"])), vec!["30", "10", "20"]);
    }

    #[test]
    fn suggestions() {
        let idx = Index::build(vec![
            rec("1", "aspirin", &[], 2019),
            rec("2", "aspirin", &[], 2019),
            rec("2", "asparaginase", &[], 2019),
            rec("3", "ibuprofen", &[], 2019),
        ])
        .unwrap();
        assert_eq!(idx.suggest(TermKind::Drug, "asp", 10), vec![("aspirin".into(), 2), ("asparaginase".into(), 1)]);
        assert!(idx.suggest(TermKind::Drug, "zz", 10).is_empty());
    }
}
