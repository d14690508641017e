use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

/// Upper bound of the neonatal period in years (28 days).
pub const NEONATE_MAX_YEARS: f64 = 28.0 / 365.0;
pub const MAX_AGE_YEARS: f64 = 150.0;

/// A normalized age in fractional years.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "AgeWire", try_from = "AgeWire")]
pub enum AgeValue {
    Exact(f64),
    /// Closed interval `[lo, hi]`.
    Range(f64, f64),
    Unknown,
}

impl AgeValue {
    /// Ordering used when several mentions compete: exact > range > unknown.
    pub fn specificity(&self) -> u8 {
        match self {
            AgeValue::Exact(_) => 2,
            AgeValue::Range(..) => 1,
            AgeValue::Unknown => 0,
        }
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            AgeValue::Exact(v) => Some((v, v)),
            AgeValue::Range(lo, hi) => Some((lo, hi)),
            AgeValue::Unknown => None,
        }
    }

    pub fn contains(&self, years: f64) -> bool {
        self.bounds().is_some_and(|(lo, hi)| lo <= years && years <= hi)
    }

    /// A phrase that normalizes back to this value.
    pub fn canonical_phrase(&self) -> String {
        match *self {
            AgeValue::Exact(v) => format!("{v} years old"),
            AgeValue::Range(lo, hi) => {
                if let Some((word, ..)) = DECADES.iter().find(|(_, d)| *d as f64 == lo && lo + 9.0 == hi) {
                    return format!("in their {word}");
                }
                LIFE_STAGES
                    .iter()
                    .find(|(_, l, h)| *l == lo && *h == hi)
                    .map(|(word, ..)| word.to_string())
                    .unwrap_or_else(|| "unknown".to_string())
            }
            AgeValue::Unknown => "unknown".to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AgeWire {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    years_lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    years_hi: Option<f64>,
}

impl From<AgeValue> for AgeWire {
    fn from(v: AgeValue) -> Self {
        let (kind, bounds) = match v {
            AgeValue::Exact(x) => ("exact", Some((x, x))),
            AgeValue::Range(lo, hi) => ("range", Some((lo, hi))),
            AgeValue::Unknown => ("unknown", None),
        };
        AgeWire { kind: kind.into(), years_lo: bounds.map(|b| b.0), years_hi: bounds.map(|b| b.1) }
    }
}

impl TryFrom<AgeWire> for AgeValue {
    type Error = String;

    fn try_from(w: AgeWire) -> Result<Self, Self::Error> {
        let bounded = |lo: Option<f64>, hi: Option<f64>| match (lo, hi) {
            (Some(lo), Some(hi)) if 0.0 <= lo && lo <= hi && hi <= MAX_AGE_YEARS => Ok((lo, hi)),
            _ => Err(format!("invalid age bounds {lo:?}..{hi:?}")),
        };
        match w.kind.as_str() {
            "exact" => {
                let (lo, hi) = bounded(w.years_lo, w.years_hi)?;
                if lo != hi {
                    return Err("exact age needs years_lo == years_hi".into());
                }
                Ok(AgeValue::Exact(lo))
            }
            "range" => bounded(w.years_lo, w.years_hi).map(|(lo, hi)| AgeValue::Range(lo, hi)),
            "unknown" => Ok(AgeValue::Unknown),
            other => Err(format!("unknown age kind `{other}`")),
        }
    }
}

const NUM: &str = r"(\d+(?:\.\d+)?)";

static EXACT_PATTERNS: LazyLock<Vec<Regex>> = LazyLock::new(|| {
    [
        format!(r"(?i)\b{NUM}[- ]years?[- ]old\b"),
        format!(r"(?i)\baged {NUM}\b"),
        format!(r"(?i)\b{NUM} ?yo\b"),
        format!(r"(?i)\b{NUM} ?y/o\b"),
    ]
    .iter()
    .map(|p| Regex::new(p).unwrap())
    .collect()
});

static UNIT_PATTERNS: LazyLock<Vec<(Regex, f64)>> = LazyLock::new(|| {
    [("months?", 12.0), ("weeks?", 52.0), ("days?", 365.0)]
        .iter()
        .map(|(unit, div)| (Regex::new(&format!(r"(?i)\b{NUM}[- ]{unit}(?:[- ]old)?\b")).unwrap(), *div))
        .collect()
});

const DECADES: [(&str, u32); 8] = [
    ("twenties", 20),
    ("thirties", 30),
    ("forties", 40),
    ("fifties", 50),
    ("sixties", 60),
    ("seventies", 70),
    ("eighties", 80),
    ("nineties", 90),
];

static DECADE_PATTERN: LazyLock<Regex> = LazyLock::new(|| {
    let words: Vec<&str> = DECADES.iter().map(|(w, _)| *w).collect();
    Regex::new(&format!(r"(?i)\bin (?:his|her|their) ({})\b", words.join("|"))).unwrap()
});

/// Life-stage words and their year ranges; the first entry of each stage is
/// its canonical word.
const LIFE_STAGES: [(&str, f64, f64); 7] = [
    ("neonate", 0.0, NEONATE_MAX_YEARS),
    ("infant", 0.0, 2.0),
    ("child", 2.0, 12.0),
    ("adolescent", 12.0, 18.0),
    ("teenager", 12.0, 18.0),
    ("adult", 18.0, 65.0),
    ("elderly", 65.0, MAX_AGE_YEARS),
];

static LIFE_STAGE_PATTERNS: LazyLock<Vec<(Regex, f64, f64)>> = LazyLock::new(|| {
    let plural = |w: &str| match w {
        "child" => "child(?:ren)?".to_string(),
        "elderly" => "elderly".to_string(),
        w => format!("{w}s?"),
    };
    LIFE_STAGES
        .iter()
        .map(|(w, lo, hi)| (Regex::new(&format!(r"(?i)\b{}\b", plural(w))).unwrap(), *lo, *hi))
        .collect()
});

fn exact(years: f64) -> AgeValue {
    if (0.0..=MAX_AGE_YEARS).contains(&years) {
        AgeValue::Exact(years)
    } else {
        AgeValue::Unknown
    }
}

/// Maps a free-text age expression onto fractional years.
///
/// Rules are tried in order: exact year forms (`6 years old`, `aged 6`,
/// `6 yo`, `6 y/o`), month/week/day forms scaled to years, decade phrases
/// (`in his sixties` → 60..69) and life-stage words. No match is `Unknown`.
pub fn normalize_age(span: &str) -> AgeValue {
    for re in EXACT_PATTERNS.iter() {
        if let Some(c) = re.captures(span) {
            return exact(c[1].parse().unwrap_or(f64::NAN));
        }
    }
    for (re, divisor) in UNIT_PATTERNS.iter() {
        if let Some(c) = re.captures(span) {
            return exact(c[1].parse::<f64>().unwrap_or(f64::NAN) / divisor);
        }
    }
    if let Some(c) = DECADE_PATTERN.captures(span) {
        let word = c[1].to_ascii_lowercase();
        let start = DECADES.iter().find(|(w, _)| *w == word).map(|(_, d)| *d as f64).unwrap();
        return AgeValue::Range(start, start + 9.0);
    }
    for (re, lo, hi) in LIFE_STAGE_PATTERNS.iter() {
        if re.is_match(span) {
            return AgeValue::Range(*lo, *hi);
        }
    }
    AgeValue::Unknown
}

/// Locates age mentions in a sentence for extraction, as char offsets.
/// Month/week/day forms only count when followed by `old`, since bare
/// durations ("for 3 months") usually describe treatment, not the patient.
pub fn find_age_mentions(sentence: &str) -> Vec<(usize, usize)> {
    static UNIT_AGE: LazyLock<Regex> =
        LazyLock::new(|| Regex::new(&format!(r"(?i)\b{NUM}[- ](?:month|week|day)s?[- ]old\b")).unwrap());
    let mut found: Vec<(usize, usize)> = Vec::new();
    let patterns = EXACT_PATTERNS
        .iter()
        .chain(std::iter::once(&*UNIT_AGE))
        .chain(std::iter::once(&*DECADE_PATTERN))
        .chain(LIFE_STAGE_PATTERNS.iter().map(|(re, ..)| re));
    for re in patterns {
        for m in re.find_iter(sentence) {
            if !found.iter().any(|(s, e)| m.start() < *e && *s < m.end()) {
                found.push((m.start(), m.end()));
            }
        }
    }
    found.sort_unstable();
    found
        .into_iter()
        .map(|(s, e)| (crate::text::char_offset(sentence, s), crate::text::char_offset(sentence, e)))
        .collect()
}
