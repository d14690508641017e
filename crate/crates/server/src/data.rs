//! Read-only fixture stores loaded at startup.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use drugwatch_core::extraction::remote::parse_response;
use drugwatch_core::normalize::normalize_term;
use drugwatch_core::{PharmaEvent, SynonymTable, TermKind};
use serde::{Deserialize, Serialize};

/// Drug information card.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrugInfo {
    pub name: String,
    pub formula: String,
    pub drug_class: String,
    pub indication: String,
    pub half_life: String,
    #[serde(default)]
    pub brands: Vec<String>,
    #[serde(default)]
    pub status_tags: Vec<StatusTag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatusTag {
    Approved,
    Investigational,
    Experimental,
    Withdrawn,
    Illicit,
    Nutraceutical,
    VetApproved,
}

#[derive(Debug, Clone, Default)]
pub struct DrugInfoStore {
    cards: BTreeMap<String, DrugInfo>,
}

impl DrugInfoStore {
    pub fn parse(text: &str) -> Result<Self, String> {
        let cards: Vec<DrugInfo> = serde_json::from_str(text).map_err(|e| e.to_string())?;
        Ok(DrugInfoStore { cards: cards.into_iter().map(|c| (c.name.to_lowercase(), c)).collect() })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// Case-insensitive lookup by name, then by canonical name through the
    /// synonym table, then by brand.
    pub fn lookup(&self, name: &str, synonyms: &SynonymTable) -> Option<&DrugInfo> {
        let key = name.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
        if key.is_empty() {
            return None;
        }
        self.cards
            .get(&key)
            .or_else(|| normalize_term(&key, TermKind::Drug, synonyms).ok().and_then(|c| self.cards.get(&c)))
            .or_else(|| self.cards.values().find(|c| c.brands.iter().any(|b| b.to_lowercase() == key)))
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }
}

/// Name of the gold annotations in the preloaded dataset.
pub const GOLD: &str = "gold";

/// Annotated sentences shipped with the service: gold events plus stored
/// outputs of several models.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PreloadedDataset {
    pub sentences: Vec<String>,
    /// Model name (including [`GOLD`]) → events per sentence.
    pub annotations: BTreeMap<String, Vec<Vec<PharmaEvent>>>,
}

#[derive(Deserialize)]
struct PreloadedLine {
    sentence: String,
    gold: serde_json::Value,
    #[serde(default)]
    predictions: BTreeMap<String, serde_json::Value>,
}

impl PreloadedDataset {
    /// One JSON object per line:
    /// `{"sentence": ..., "gold": [events], "predictions": {"<model>": [events]}}`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut out = PreloadedDataset::default();
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| (i + 1, l)).collect();
        for (row, (line_no, line)) in lines.iter().enumerate() {
            let parsed: PreloadedLine = serde_json::from_str(line).map_err(|e| format!("line {line_no}: {e}"))?;
            let mut put = |model: &str, value: &serde_json::Value| -> Result<(), String> {
                let events = parse_response(&parsed.sentence, &value.to_string())
                    .map_err(|e| format!("line {line_no}, {model}: {e}"))?
                    .events;
                let column = out.annotations.entry(model.to_string()).or_insert_with(|| vec![Vec::new(); lines.len()]);
                column[row] = events;
                Ok(())
            };
            put(GOLD, &parsed.gold)?;
            for (model, value) in &parsed.predictions {
                put(model, value)?;
            }
            out.sentences.push(parsed.sentence);
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Conventional file layout of a data directory.
#[derive(Debug, Clone, PartialEq)]
pub struct DataPaths {
    pub records: PathBuf,
    pub corpus: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub druginfo: Option<PathBuf>,
    pub preloaded: Option<PathBuf>,
    pub drug_lexicon: Option<PathBuf>,
    pub effect_lexicon: Option<PathBuf>,
    pub faers_fixtures: PathBuf,
}

impl DataPaths {
    /// The bundled layout under `dir`, serving the frozen pipeline output.
    pub fn bundled(dir: &Path) -> Self {
        DataPaths {
            records: dir.join("golden/records.jsonl"),
            corpus: Some(dir.join("corpus/case_reports_50.jsonl")),
            synonyms: Some(dir.join("synonyms.tsv")),
            druginfo: Some(dir.join("druginfo.json")),
            preloaded: Some(dir.join("phee_preloaded.jsonl")),
            drug_lexicon: Some(dir.join("lexicons/drugs.txt")),
            effect_lexicon: Some(dir.join("lexicons/effects.txt")),
            faers_fixtures: dir.join("faers"),
        }
    }
}

/// Article metadata by pmid.
pub type ArticleStore = HashMap<String, drugwatch_core::CaseReport>;
