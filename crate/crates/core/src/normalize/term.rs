use std::collections::HashMap;
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;

use super::NormalizeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Drug,
    Effect,
}

impl TermKind {
    pub fn opposite(self) -> TermKind {
        match self {
            TermKind::Drug => TermKind::Effect,
            TermKind::Effect => TermKind::Drug,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TermKind::Drug => "drug",
            TermKind::Effect => "effect",
        }
    }
}

impl std::str::FromStr for TermKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "drug" => Ok(TermKind::Drug),
            "effect" => Ok(TermKind::Effect),
            other => Err(format!("unknown term kind `{other}`")),
        }
    }
}

/// Synonym → canonical head term. Keys and values are stored cleaned, and
/// chains (`a → b`, `b → c`) are resolved at load so a lookup result is
/// never itself redirected.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SynonymTable {
    map: HashMap<String, String>,
}

impl SynonymTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load(path: &Path) -> Result<Self, NormalizeError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| NormalizeError::Io { path: path.display().to_string(), source: e })?;
        Self::parse(&text)
    }

    /// Parses `synonym<TAB>canonical` lines. Blank lines and lines starting
    /// with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, NormalizeError> {
        let mut raw: Vec<(String, String, usize)> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (syn, canon) = line
                .split_once('\t')
                .ok_or_else(|| NormalizeError::Dictionary { line: line_no, message: "expected `synonym<TAB>canonical`".into() })?;
            let syn = clean(syn, TermKind::Effect)
                .map_err(|_| NormalizeError::Dictionary { line: line_no, message: "empty synonym".into() })?;
            let canon = clean(canon, TermKind::Effect)
                .map_err(|_| NormalizeError::Dictionary { line: line_no, message: "empty canonical term".into() })?;
            if let Some(first) = seen.insert(syn.clone(), line_no) {
                return Err(NormalizeError::Dictionary {
                    line: line_no,
                    message: format!("duplicate synonym `{syn}` (first on line {first})"),
                });
            }
            raw.push((syn, canon, line_no));
        }
        let direct: HashMap<String, (String, usize)> =
            raw.into_iter().map(|(s, c, l)| (s, (c, l))).collect();
        let mut map = HashMap::with_capacity(direct.len());
        for (syn, (canon, line)) in &direct {
            let mut target = canon.clone();
            let mut steps = 0;
            while let Some((next, _)) = direct.get(&target) {
                if *next == target {
                    break;
                }
                steps += 1;
                if steps > direct.len() {
                    return Err(NormalizeError::Dictionary {
                        line: *line,
                        message: format!("synonym cycle through `{syn}`"),
                    });
                }
                target = next.clone();
            }
            map.insert(syn.clone(), target);
        }
        Ok(SynonymTable { map })
    }

    pub fn insert(&mut self, synonym: &str, canonical: &str) {
        if let (Ok(s), Ok(c)) = (clean(synonym, TermKind::Effect), clean(canonical, TermKind::Effect)) {
            self.map.insert(s, c);
        }
    }

    pub fn lookup(&self, cleaned: &str) -> Option<&str> {
        self.map.get(cleaned).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

static DOSE_SUFFIX: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b[0-9]+(\.[0-9]+)? ?(mg|g|mcg|µg|μg|ml|iu)(/\w+)?$").unwrap());

const ROUTE_SUFFIXES: [&str; 8] =
    ["tablet", "tablets", "capsule", "capsules", "injection", "oral", "iv", "intravenous"];

fn trim_punct(s: &str) -> &str {
    s.trim_matches(|c: char| !c.is_alphanumeric())
}

fn collapse_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Cleaning without dictionary lookup. Dose and route suffixes are only
/// stripped from drug terms.
fn clean(span: &str, kind: TermKind) -> Result<String, NormalizeError> {
    let mut s = collapse_ws(trim_punct(&span.to_lowercase()));
    if kind == TermKind::Drug {
        loop {
            let before = s.len();
            if let Some((head, last)) = s.rsplit_once(' ') {
                if ROUTE_SUFFIXES.contains(&last) {
                    s = head.to_string();
                }
            } else if ROUTE_SUFFIXES.contains(&s.as_str()) {
                s.clear();
            }
            if let Some(m) = DOSE_SUFFIX.find(&s) {
                s.truncate(m.start());
            }
            s = collapse_ws(trim_punct(&s));
            if s.len() == before {
                break;
            }
        }
    }
    if s.is_empty() {
        return Err(NormalizeError::EmptyTerm(span.to_string()));
    }
    Ok(s)
}

/// Canonicalizes a drug or effect span: lowercase, trim surrounding
/// punctuation, collapse whitespace, strip trailing dose and route tokens
/// (drugs), then map synonyms to their head term.
pub fn normalize_term(span: &str, kind: TermKind, synonyms: &SynonymTable) -> Result<String, NormalizeError> {
    let mut cleaned = clean(span, kind)?;
    // Canonical terms are cleaned as effects at load; re-clean for the
    // requested kind until the result is a fixed point.
    for _ in 0..=synonyms.len() {
        match synonyms.lookup(&cleaned) {
            Some(target) if target != cleaned => match clean(target, kind) {
                Ok(next) if next != cleaned => cleaned = next,
                _ => break,
            },
            _ => break,
        }
    }
    Ok(cleaned)
}
