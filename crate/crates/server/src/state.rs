use std::collections::BTreeMap;
use std::sync::Arc;

use drugwatch_core::corpus::{parse_corpus_str, IngestOptions};
use drugwatch_core::extraction::{Lexicons, RuleExtractor};
use drugwatch_core::normalize::parse_records_jsonl;
use drugwatch_core::{Extractor, FaersClient, Index, SynonymTable};

use crate::config::ServiceConfig;
use crate::data::{ArticleStore, DataPaths, DrugInfoStore, PreloadedDataset};
use crate::session::SessionStore;

pub struct AppState {
    pub index: Index,
    pub synonyms: SynonymTable,
    pub articles: ArticleStore,
    pub druginfo: DrugInfoStore,
    /// Runnable extractors by model name.
    pub models: BTreeMap<String, Arc<dyn Extractor>>,
    pub faers: Arc<FaersClient>,
    pub sessions: SessionStore,
    pub config: ServiceConfig,
}

impl AppState {
    pub fn model_names(&self) -> Vec<String> {
        self.models.keys().cloned().collect()
    }

    /// Loads everything named by `paths`. The rule extractor is registered
    /// when both lexicons are given; `extra_models` are added as is.
    pub fn load(
        paths: &DataPaths,
        faers: FaersClient,
        extra_models: Vec<Arc<dyn Extractor>>,
        config: ServiceConfig,
    ) -> Result<AppState, String> {
        let read = |p: &std::path::Path| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
        let records = parse_records_jsonl(&read(&paths.records)?).map_err(|e| format!("{}: {e}", paths.records.display()))?;
        let index = Index::build(records).map_err(|e| format!("{}: {e}", paths.records.display()))?;
        let synonyms = match &paths.synonyms {
            Some(p) => SynonymTable::load(p).map_err(|e| format!("{}: {e}", p.display()))?,
            None => SynonymTable::new(),
        };
        let articles = match &paths.corpus {
            Some(p) => parse_corpus_str(&read(p)?, IngestOptions::default())
                .reports
                .into_iter()
                .map(|r| (r.pmid.clone(), r))
                .collect(),
            None => ArticleStore::new(),
        };
        let druginfo = match &paths.druginfo {
            Some(p) => DrugInfoStore::load(p)?,
            None => DrugInfoStore::default(),
        };
        let preloaded = paths.preloaded.as_deref().map(PreloadedDataset::load).transpose()?;
        let mut models: BTreeMap<String, Arc<dyn Extractor>> = BTreeMap::new();
        if let (Some(d), Some(e)) = (&paths.drug_lexicon, &paths.effect_lexicon) {
            let rule = RuleExtractor::new(Lexicons::load(d, e).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            models.insert(RuleExtractor::NAME.to_string(), Arc::new(rule));
        }
        for m in extra_models {
            models.insert(m.name().to_string(), m);
        }
        Ok(AppState {
            index,
            synonyms,
            articles,
            druginfo,
            models,
            faers: Arc::new(faers),
            sessions: SessionStore::new(config.session_ttl, preloaded),
            config,
        })
    }
}
