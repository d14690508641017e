use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::normalize::{normalize_term, AgeValue, Gender, SynonymTable, TermKind, NEONATE_MAX_YEARS};

/// Demographic age buckets. Bounds are half-open `[lo, hi)` in years.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgeGroup {
    Neonate,
    Infant,
    Child,
    Adolescent,
    Adult,
    Elderly,
    Unknown,
}

impl AgeGroup {
    pub const ALL: [AgeGroup; 7] = [
        AgeGroup::Neonate,
        AgeGroup::Infant,
        AgeGroup::Child,
        AgeGroup::Adolescent,
        AgeGroup::Adult,
        AgeGroup::Elderly,
        AgeGroup::Unknown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AgeGroup::Neonate => "neonate",
            AgeGroup::Infant => "infant",
            AgeGroup::Child => "child",
            AgeGroup::Adolescent => "adolescent",
            AgeGroup::Adult => "adult",
            AgeGroup::Elderly => "elderly",
            AgeGroup::Unknown => "unknown",
        }
    }

    /// `[lo, hi)` in years; `None` for the unknown bucket.
    pub fn bounds(self) -> Option<(f64, f64)> {
        Some(match self {
            AgeGroup::Neonate => (0.0, NEONATE_MAX_YEARS),
            AgeGroup::Infant => (NEONATE_MAX_YEARS, 2.0),
            AgeGroup::Child => (2.0, 12.0),
            AgeGroup::Adolescent => (12.0, 18.0),
            AgeGroup::Adult => (18.0, 65.0),
            AgeGroup::Elderly => (65.0, f64::INFINITY),
            AgeGroup::Unknown => return None,
        })
    }

    pub fn of_years(years: f64) -> AgeGroup {
        Self::ALL
            .into_iter()
            .find(|g| g.bounds().is_some_and(|(lo, hi)| lo <= years && years < hi))
            .unwrap_or(AgeGroup::Unknown)
    }

    /// Exact ages fall in the group containing them. A range belongs to a
    /// group only when it lies inside it (its upper end may touch the
    /// group's upper bound); anything else is unknown.
    pub fn of(age: &AgeValue) -> AgeGroup {
        match *age {
            AgeValue::Exact(v) => Self::of_years(v),
            AgeValue::Range(lo, hi) => Self::ALL
                .into_iter()
                .find(|g| g.bounds().is_some_and(|(a, b)| lo >= a && hi <= b && lo < b))
                .unwrap_or(AgeGroup::Unknown),
            AgeValue::Unknown => AgeGroup::Unknown,
        }
    }
}

impl fmt::Display for AgeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AgeGroup {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|g| g.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| SearchError::InvalidQuery(format!("unknown age group `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgeFilter {
    Exact(f64),
    Group(AgeGroup),
}

/// A faceted search. `terms` are OR-ed; `cofilter` holds opposite-kind
/// terms, at least one of which the record must carry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuerySpec {
    pub kind: TermKind,
    pub terms: Vec<String>,
    #[serde(default)]
    pub cofilter: Vec<String>,
    #[serde(default)]
    pub age: Option<AgeFilter>,
    #[serde(default)]
    pub gender: Option<Gender>,
    /// Inclusive `[lo, hi]`.
    #[serde(default)]
    pub year_range: Option<(i32, i32)>,
}

impl QuerySpec {
    pub fn new(kind: TermKind, terms: impl IntoIterator<Item = impl Into<String>>) -> Self {
        QuerySpec {
            kind,
            terms: terms.into_iter().map(Into::into).collect(),
            cofilter: Vec::new(),
            age: None,
            gender: None,
            year_range: None,
        }
    }

    pub fn with_cofilter(mut self, terms: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.cofilter = terms.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_age(mut self, age: AgeFilter) -> Self {
        self.age = Some(age);
        self
    }

    pub fn with_gender(mut self, gender: Gender) -> Self {
        self.gender = Some(gender);
        self
    }

    pub fn with_years(mut self, lo: i32, hi: i32) -> Self {
        self.year_range = Some((lo, hi));
        self
    }

    /// Canonicalizes terms and cofilter terms through `normalize_term`,
    /// removing duplicates. Fails when no terms remain.
    pub fn canonicalize(&self, synonyms: &SynonymTable) -> Result<QuerySpec, SearchError> {
        let canon = |terms: &[String], kind: TermKind| -> Result<Vec<String>, SearchError> {
            let mut out: Vec<String> = Vec::new();
            for t in terms {
                let c = normalize_term(t, kind, synonyms).map_err(|e| SearchError::InvalidQuery(e.to_string()))?;
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            Ok(out)
        };
        if self.terms.is_empty() {
            return Err(SearchError::InvalidQuery("at least one search term is required".into()));
        }
        if let Some((lo, hi)) = self.year_range {
            if lo > hi {
                return Err(SearchError::InvalidQuery(format!("year range {lo}..{hi} is empty")));
            }
        }
        Ok(QuerySpec {
            terms: canon(&self.terms, self.kind)?,
            cofilter: canon(&self.cofilter, self.kind.opposite())?,
            ..self.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_partition() {
        assert_eq!(AgeGroup::of_years(0.0), AgeGroup::Neonate);
        assert_eq!(AgeGroup::of_years(NEONATE_MAX_YEARS), AgeGroup::Infant);
        assert_eq!(AgeGroup::of_years(2.0), AgeGroup::Child);
        assert_eq!(AgeGroup::of_years(17.99), AgeGroup::Adolescent);
        assert_eq!(AgeGroup::of_years(64.0), AgeGroup::Adult);
        assert_eq!(AgeGroup::of_years(65.0), AgeGroup::Elderly);
        assert_eq!(AgeGroup::of_years(120.0), AgeGroup::Elderly);
    }

    #[test]
    fn ranges_must_be_contained() {
        assert_eq!(AgeGroup::of(&AgeValue::Range(2.0, 12.0)), AgeGroup::Child);
        assert_eq!(AgeGroup::of(&AgeValue::Range(60.0, 69.0)), AgeGroup::Unknown);
        assert_eq!(AgeGroup::of(&AgeValue::Range(70.0, 79.0)), AgeGroup::Elderly);
        assert_eq!(AgeGroup::of(&AgeValue::Range(65.0, 150.0)), AgeGroup::Elderly);
        assert_eq!(AgeGroup::of(&AgeValue::Range(0.0, NEONATE_MAX_YEARS)), AgeGroup::Neonate);
        assert_eq!(AgeGroup::of(&AgeValue::Range(0.0, 2.0)), AgeGroup::Unknown);
        assert_eq!(AgeGroup::of(&AgeValue::Unknown), AgeGroup::Unknown);
    }

    #[test]
    fn canonicalize_terms() {
        let mut syn = SynonymTable::new();
        syn.insert("ten", "toxic epidermal necrolysis");
        let q = QuerySpec::new(TermKind::Drug, ["Aspirin 100 mg", "aspirin"]).with_cofilter(["TEN"]);
        let c = q.canonicalize(&syn).unwrap();
        assert_eq!(c.terms, vec!["aspirin"]);
        assert_eq!(c.cofilter, vec!["toxic epidermal necrolysis"]);
        assert!(QuerySpec::new(TermKind::Drug, Vec::<String>::new()).canonicalize(&syn).is_err());
        assert!(QuerySpec::new(TermKind::Drug, ["..."]).canonicalize(&syn).is_err());
    }
}
