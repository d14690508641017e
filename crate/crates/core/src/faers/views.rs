//! FAERS counterparts of the PubMed demographic views, on the same
//! age-group and gender axes. Counts here are FAERS reports, not articles.
//!
//! An age group maps to one onset-age filter in a single unit, so reports
//! whose onset age was recorded in another unit (or not at all) land in the
//! unknown age group.

use std::collections::BTreeMap;

use super::client::FaersClient;
use super::query::{sex_from_code, AgeUnit, CountField, FaersQuery, FaersTermKind, OnsetAge};
use super::FaersError;
use crate::normalize::{Gender, TermKind};
use crate::search::{AgeGroup, CrossCell, Facet, TermCount};

/// Onset-age filter for a group, or `None` for the unknown group.
pub fn onset_age_filter(group: AgeGroup) -> Option<OnsetAge> {
    let (lo, hi, unit) = match group {
        AgeGroup::Neonate => (0, 27, AgeUnit::Day),
        AgeGroup::Infant => (1, 23, AgeUnit::Month),
        AgeGroup::Child => (2, 11, AgeUnit::Year),
        AgeGroup::Adolescent => (12, 17, AgeUnit::Year),
        AgeGroup::Adult => (18, 64, AgeUnit::Year),
        AgeGroup::Elderly => (65, 150, AgeUnit::Year),
        AgeGroup::Unknown => return None,
    };
    Some(OnsetAge { lo, hi, unit })
}

/// Drug queries search generic names, effect queries search reactions.
pub fn search_kind(kind: TermKind) -> FaersTermKind {
    match kind {
        TermKind::Drug => FaersTermKind::GenericName,
        TermKind::Effect => FaersTermKind::Reaction,
    }
}

/// The count field holding the opposite kind's terms.
pub fn opposite_count(kind: TermKind) -> CountField {
    match kind {
        TermKind::Drug => CountField::Reaction,
        TermKind::Effect => CountField::GenericName,
    }
}

fn with_group(q: FaersQuery, group: AgeGroup) -> FaersQuery {
    match onset_age_filter(group) {
        Some(a) => q.with_onset_age(a.lo, a.hi, a.unit),
        None => q,
    }
}

fn sex_counts(client: &FaersClient, q: &FaersQuery) -> Result<BTreeMap<Gender, u64>, FaersError> {
    let mut out = BTreeMap::new();
    for entry in client.fetch_counts(q)?.entries {
        *out.entry(sex_from_code(&entry.key)).or_insert(0) += entry.count;
    }
    Ok(out)
}

fn top_terms(client: &FaersClient, q: FaersQuery, n: usize) -> Result<Vec<TermCount>, FaersError> {
    let limit = n.clamp(1, super::query::MAX_LIMIT as usize) as u32;
    let result = client.fetch_counts(&q.with_limit(Some(limit)))?;
    Ok(result
        .entries
        .into_iter()
        .take(n)
        .map(|e| TermCount { term: e.key.to_lowercase(), count: e.count as usize })
        .collect())
}

impl FaersClient {
    /// Report counts per (age group, sex). The unknown age group holds the
    /// reports not covered by any group filter.
    pub fn demographics(&self, kind: TermKind, term: &str) -> Result<BTreeMap<(AgeGroup, Gender), usize>, FaersError> {
        let base = FaersQuery::new(search_kind(kind), term, CountField::PatientSex);
        let totals = sex_counts(self, &base)?;
        let mut out = BTreeMap::new();
        let mut covered: BTreeMap<Gender, u64> = BTreeMap::new();
        for group in AgeGroup::ALL.into_iter().filter(|g| *g != AgeGroup::Unknown) {
            for (sex, count) in sex_counts(self, &with_group(base.clone(), group))? {
                *covered.entry(sex).or_insert(0) += count;
                out.insert((group, sex), count as usize);
            }
        }
        for (sex, total) in totals {
            let rest = total.saturating_sub(covered.get(&sex).copied().unwrap_or(0));
            if rest > 0 {
                out.insert((AgeGroup::Unknown, sex), rest as usize);
            }
        }
        out.retain(|_, c| *c > 0);
        Ok(out)
    }

    /// Top co-reported terms of the opposite kind within one facet value.
    pub fn group_breakdown(
        &self,
        kind: TermKind,
        term: &str,
        facet: Facet,
        n: usize,
    ) -> Result<Vec<TermCount>, FaersError> {
        let base = FaersQuery::new(search_kind(kind), term, opposite_count(kind));
        let q = match facet {
            Facet::Gender(g) => base.with_sex(g),
            Facet::AgeGroup(AgeGroup::Unknown) => {
                return Err(FaersError::InvalidQuery("the unknown age group has no FAERS onset-age filter".into()))
            }
            Facet::AgeGroup(group) => with_group(base, group),
        };
        top_terms(self, q, n)
    }

    /// Per (age group, sex) report count and top-k terms, for the groups
    /// with a FAERS onset-age filter.
    pub fn cross_breakdown(
        &self,
        kind: TermKind,
        term: &str,
        k: usize,
    ) -> Result<BTreeMap<(AgeGroup, Gender), CrossCell>, FaersError> {
        let demographics = self.demographics(kind, term)?;
        let mut out = BTreeMap::new();
        for ((group, sex), count) in demographics {
            if group == AgeGroup::Unknown {
                continue;
            }
            let q = with_group(FaersQuery::new(search_kind(kind), term, opposite_count(kind)), group).with_sex(sex);
            out.insert((group, sex), CrossCell { count, top: top_terms(self, q, k)? });
        }
        Ok(out)
    }
}
