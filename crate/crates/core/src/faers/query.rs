use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::FaersError;
use crate::normalize::Gender;

pub const DEFAULT_BASE_URL: &str = "https://api.fda.gov";
pub const ENDPOINT_PATH: &str = "/drug/event.json";
pub const MAX_LIMIT: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaersTermKind {
    GenericName,
    BrandName,
    Reaction,
}

impl FaersTermKind {
    pub fn field(self) -> &'static str {
        match self {
            FaersTermKind::GenericName => "patient.drug.openfda.generic_name",
            FaersTermKind::BrandName => "patient.drug.openfda.brand_name",
            FaersTermKind::Reaction => "patient.reaction.reactionmeddrapt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountField {
    GenericName,
    BrandName,
    Reaction,
    PatientSex,
    OnsetAge,
    Country,
    ReceiveDate,
}

impl CountField {
    /// The `count=` value; term fields use their `.exact` variant.
    pub fn param(self) -> &'static str {
        match self {
            CountField::GenericName => "patient.drug.openfda.generic_name.exact",
            CountField::BrandName => "patient.drug.openfda.brand_name.exact",
            CountField::Reaction => "patient.reaction.reactionmeddrapt.exact",
            CountField::PatientSex => "patient.patientsex",
            CountField::OnsetAge => "patient.patientonsetage",
            CountField::Country => "occurcountry.exact",
            CountField::ReceiveDate => "receivedate",
        }
    }

    pub fn is_term_count(self) -> bool {
        !matches!(self, CountField::PatientSex | CountField::OnsetAge | CountField::ReceiveDate)
    }
}

/// OpenFDA onset-age unit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgeUnit {
    Decade,
    Year,
    Month,
    Week,
    Day,
    Hour,
}

impl AgeUnit {
    pub fn code(self) -> u16 {
        match self {
            AgeUnit::Decade => 800,
            AgeUnit::Year => 801,
            AgeUnit::Month => 802,
            AgeUnit::Week => 803,
            AgeUnit::Day => 804,
            AgeUnit::Hour => 805,
        }
    }

    pub fn from_code(code: u16) -> Option<AgeUnit> {
        [AgeUnit::Decade, AgeUnit::Year, AgeUnit::Month, AgeUnit::Week, AgeUnit::Day, AgeUnit::Hour]
            .into_iter()
            .find(|u| u.code() == code)
    }

    pub fn to_years(self, value: f64) -> f64 {
        match self {
            AgeUnit::Decade => value * 10.0,
            AgeUnit::Year => value,
            AgeUnit::Month => value / 12.0,
            AgeUnit::Week => value / 52.0,
            AgeUnit::Day => value / 365.0,
            AgeUnit::Hour => value / (365.0 * 24.0),
        }
    }
}

/// Inclusive onset-age range in one unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OnsetAge {
    pub lo: u32,
    pub hi: u32,
    pub unit: AgeUnit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaersQuery {
    pub kind: FaersTermKind,
    pub term: String,
    pub sex: Option<Gender>,
    pub onset_age: Option<OnsetAge>,
    /// Two-letter country code.
    pub country: Option<String>,
    /// Inclusive `YYYYMMDD` bounds.
    pub receive_date: Option<(String, String)>,
    pub count_field: CountField,
    /// Required for term counts, optional otherwise.
    pub limit: Option<u32>,
}

impl FaersQuery {
    /// A term count with the dashboard's default limit of 50, or a plain
    /// count for the other fields.
    pub fn new(kind: FaersTermKind, term: impl Into<String>, count_field: CountField) -> Self {
        FaersQuery {
            kind,
            term: term.into(),
            sex: None,
            onset_age: None,
            country: None,
            receive_date: None,
            count_field,
            limit: count_field.is_term_count().then_some(50),
        }
    }

    pub fn with_sex(mut self, sex: Gender) -> Self {
        self.sex = Some(sex);
        self
    }

    pub fn with_onset_age(mut self, lo: u32, hi: u32, unit: AgeUnit) -> Self {
        self.onset_age = Some(OnsetAge { lo, hi, unit });
        self
    }

    pub fn with_country(mut self, code: impl Into<String>) -> Self {
        self.country = Some(code.into());
        self
    }

    pub fn with_receive_date(mut self, from: impl Into<String>, to: impl Into<String>) -> Self {
        self.receive_date = Some((from.into(), to.into()));
        self
    }

    pub fn with_limit(mut self, limit: Option<u32>) -> Self {
        self.limit = limit;
        self
    }
}

pub fn sex_code(g: Gender) -> u8 {
    match g {
        Gender::Unknown => 0,
        Gender::Male => 1,
        Gender::Female => 2,
    }
}

pub fn sex_from_code(code: &str) -> Gender {
    match code {
        "1" => Gender::Male,
        "2" => Gender::Female,
        _ => Gender::Unknown,
    }
}

fn encode_phrase(term: &str) -> String {
    form_urlencoded::byte_serialize(term.as_bytes()).collect()
}

fn invalid(msg: impl Into<String>) -> FaersError {
    FaersError::InvalidQuery(msg.into())
}

fn valid_date(d: &str) -> bool {
    d.len() == 8 && d.bytes().all(|b| b.is_ascii_digit())
}

/// Builds the count request URL against `base` (scheme and host, no
/// trailing slash).
pub fn build_count_request_at(base: &str, q: &FaersQuery) -> Result<String, FaersError> {
    if q.term.trim().is_empty() {
        return Err(invalid("term must not be empty"));
    }
    let mut search = format!("{}:\"{}\"", q.kind.field(), encode_phrase(&q.term));
    if let Some(sex) = q.sex {
        if q.count_field == CountField::PatientSex {
            return Err(invalid("cannot filter and count on patient.patientsex together"));
        }
        write!(search, "+AND+patient.patientsex:{}", sex_code(sex)).unwrap();
    }
    if let Some(age) = q.onset_age {
        if age.lo > age.hi {
            return Err(invalid(format!("onset age range {}..{} is empty", age.lo, age.hi)));
        }
        write!(
            search,
            "+AND+patient.patientonsetage:[{}+TO+{}]+AND+patient.patientonsetageunit:{}",
            age.lo,
            age.hi,
            age.unit.code()
        )
        .unwrap();
    } else if q.count_field == CountField::OnsetAge {
        return Err(invalid("counting patient.patientonsetage requires an onset-age unit filter"));
    }
    if let Some(country) = &q.country {
        if country.len() != 2 || !country.bytes().all(|b| b.is_ascii_alphabetic()) {
            return Err(invalid(format!("country {country:?} is not a two-letter code")));
        }
        write!(search, "+AND+occurcountry:\"{}\"", country.to_ascii_uppercase()).unwrap();
    }
    if let Some((from, to)) = &q.receive_date {
        if !valid_date(from) || !valid_date(to) || from > to {
            return Err(invalid(format!("receive-date range {from}..{to} is not YYYYMMDD..YYYYMMDD")));
        }
        write!(search, "+AND+receivedate:[{from}+TO+{to}]").unwrap();
    }
    let mut url = format!("{base}{ENDPOINT_PATH}?search={search}&count={}", q.count_field.param());
    match q.limit {
        Some(l) if !(1..=MAX_LIMIT).contains(&l) => return Err(invalid(format!("limit {l} outside 1..={MAX_LIMIT}"))),
        Some(_) if q.count_field == CountField::ReceiveDate => {
            return Err(invalid("limit does not apply to a receivedate time series"))
        }
        Some(l) => write!(url, "&limit={l}").unwrap(),
        None if q.count_field.is_term_count() => return Err(invalid("term counts require a limit")),
        None => {}
    }
    Ok(url)
}

pub fn build_count_request(q: &FaersQuery) -> Result<String, FaersError> {
    build_count_request_at(DEFAULT_BASE_URL, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_examples() {
        let q = FaersQuery::new(FaersTermKind::GenericName, "acetaminophen", CountField::Reaction);
        assert_eq!(
            build_count_request(&q).unwrap(),
            "https://api.fda.gov/drug/event.json?search=patient.drug.openfda.generic_name:\"acetaminophen\"&count=patient.reaction.reactionmeddrapt.exact&limit=50"
        );
        assert!(build_count_request(&q.clone().with_sex(Gender::Male)).unwrap().contains("+AND+patient.patientsex:1&"));
        let series = FaersQuery::new(FaersTermKind::GenericName, "acetaminophen", CountField::ReceiveDate);
        assert!(build_count_request(&series).unwrap().ends_with("&count=receivedate"));
    }

    #[test]
    fn phrases_encode_spaces_as_plus() {
        let q = FaersQuery::new(FaersTermKind::Reaction, "liver failure", CountField::GenericName);
        assert!(build_count_request(&q).unwrap().contains(":\"liver+failure\"&"));
    }

    #[test]
    fn invalid_combinations() {
        let base = FaersQuery::new(FaersTermKind::GenericName, "x", CountField::PatientSex);
        assert!(build_count_request(&base.clone().with_sex(Gender::Female)).is_err());
        assert!(build_count_request(&FaersQuery::new(FaersTermKind::GenericName, "x", CountField::OnsetAge)).is_err());
        assert!(build_count_request(&FaersQuery::new(FaersTermKind::GenericName, " ", CountField::Reaction)).is_err());
        assert!(build_count_request(&base.clone().with_onset_age(5, 2, AgeUnit::Year)).is_err());
        assert!(build_count_request(&base.clone().with_country("USA")).is_err());
        assert!(build_count_request(&base.clone().with_receive_date("2020", "2021")).is_err());
        let q = FaersQuery::new(FaersTermKind::GenericName, "x", CountField::Reaction);
        assert!(build_count_request(&q.clone().with_limit(Some(0))).is_err());
        assert!(build_count_request(&q.clone().with_limit(Some(1001))).is_err());
        assert!(build_count_request(&q.with_limit(None)).is_err());
    }

    #[test]
    fn unit_codes() {
        assert_eq!(AgeUnit::from_code(803), Some(AgeUnit::Week));
        assert_eq!(AgeUnit::Month.to_years(6.0), 0.5);
        assert_eq!(AgeUnit::Decade.to_years(3.0), 30.0);
    }
}
