//! Query-string handling. Parameters may repeat (`terms=a&terms=b`), which
//! the stock extractors do not support.

use std::str::FromStr;

use drugwatch_core::corpus::{MAX_YEAR, MIN_YEAR};
use drugwatch_core::{AgeFilter, AgeGroup, Gender, QuerySpec, SynonymTable, TermKind};

use crate::error::{ApiError, ApiResult};

pub const DEFAULT_PAGE_SIZE: usize = 20;
pub const MAX_PAGE_SIZE: usize = 1000;

#[derive(Debug, Clone, Default)]
pub struct Params(Vec<(String, String)>);

impl Params {
    pub fn parse(raw: Option<&str>) -> Self {
        Params(form_urlencoded::parse(raw.unwrap_or("").as_bytes()).into_owned().collect())
    }

    /// Last non-blank value of `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().rev().find(|(k, v)| k == key && !v.trim().is_empty()).map(|(_, v)| v.trim())
    }

    pub fn all(&self, key: &str) -> Vec<&str> {
        self.0.iter().filter(|(k, v)| k == key && !v.trim().is_empty()).map(|(_, v)| v.trim()).collect()
    }

    pub fn parse_opt<T>(&self, key: &str) -> ApiResult<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|e| ApiError::bad_request(format!("invalid `{key}`: {e}"))))
            .transpose()
    }

    pub fn kind(&self) -> ApiResult<TermKind> {
        Ok(self.parse_opt::<TermKind>("kind")?.unwrap_or(TermKind::Drug))
    }

    /// `(offset, page_size)`.
    pub fn page(&self) -> ApiResult<(usize, usize)> {
        let offset = self.parse_opt::<usize>("offset")?.unwrap_or(0);
        let size = self.parse_opt::<usize>("page_size")?.unwrap_or(DEFAULT_PAGE_SIZE);
        if size == 0 || size > MAX_PAGE_SIZE {
            return Err(ApiError::bad_request(format!("`page_size` must be between 1 and {MAX_PAGE_SIZE}")));
        }
        Ok((offset, size))
    }

    /// The raw (not yet canonical) query.
    pub fn query_spec(&self) -> ApiResult<QuerySpec> {
        let mut q = QuerySpec::new(self.kind()?, self.all("terms")).with_cofilter(self.all("cofilter"));
        let exact = self.parse_opt::<f64>("age")?;
        let group = self.parse_opt::<AgeGroup>("age_group")?;
        q.age = match (exact, group) {
            (Some(_), Some(_)) => {
                return Err(ApiError::bad_request("conflicting age filters: give either `age` or `age_group`"))
            }
            (Some(v), None) if !(0.0..=drugwatch_core::normalize::MAX_AGE_YEARS).contains(&v) => {
                return Err(ApiError::bad_request(format!("invalid `age`: {v} is out of range")))
            }
            (Some(v), None) => Some(AgeFilter::Exact(v)),
            (None, g) => g.map(AgeFilter::Group),
        };
        q.gender = self.parse_opt::<Gender>("gender")?;
        let from = self.parse_opt::<i32>("year_from")?;
        let to = self.parse_opt::<i32>("year_to")?;
        if from.is_some() || to.is_some() {
            q.year_range = Some((from.unwrap_or(MIN_YEAR), to.unwrap_or(MAX_YEAR)));
        }
        Ok(q)
    }

    pub fn canonical_query(&self, synonyms: &SynonymTable) -> ApiResult<(QuerySpec, QuerySpec)> {
        let raw = self.query_spec()?;
        let canonical = raw.canonicalize(synonyms)?;
        Ok((raw, canonical))
    }
}

pub fn page<T: Clone>(items: &[T], offset: usize, size: usize) -> Vec<T> {
    items.iter().skip(offset).take(size).cloned().collect()
}
