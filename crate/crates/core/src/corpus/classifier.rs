use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::CorpusError;

pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdeLabel {
    pub is_ade: bool,
    pub score: f64,
}

/// Sentence-level ADE relevance classifier.
pub trait SentenceClassifier: Send + Sync {
    fn classify(&self, sentence: &str) -> AdeLabel;
}

/// Lowercased alphanumeric unigrams.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric()).filter(|t| !t.is_empty()).map(str::to_lowercase).collect()
}

/// Multinomial naive Bayes over unigrams with add-one smoothing.
///
/// Index 0 of every per-class pair is the negative class, index 1 the
/// positive class. The smoothing denominator counts one extra unknown-token
/// bucket, so each class distribution over vocabulary plus `unk` sums to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineClassifier {
    pub log_prior: [f64; 2],
    pub token_log_likelihood: BTreeMap<String, [f64; 2]>,
    pub unk_log_likelihood: [f64; 2],
    pub threshold: f64,
}

impl BaselineClassifier {
    pub fn train<S: AsRef<str>>(labeled: &[(S, bool)]) -> Result<Self, CorpusError> {
        let mut docs = [0usize; 2];
        let mut counts: BTreeMap<String, [u64; 2]> = BTreeMap::new();
        for (text, label) in labeled {
            let c = usize::from(*label);
            docs[c] += 1;
            for tok in tokenize(text.as_ref()) {
                counts.entry(tok).or_default()[c] += 1;
            }
        }
        for (c, name) in [(1, "positive"), (0, "negative")] {
            if docs[c] == 0 {
                return Err(CorpusError::Training(format!("no {name} examples")));
            }
        }
        let vocab: BTreeSet<&String> = counts.keys().collect();
        let totals = [0, 1].map(|c| counts.values().map(|v| v[c]).sum::<u64>());
        let denom = totals.map(|t| (t + vocab.len() as u64 + 1) as f64);
        let n = (docs[0] + docs[1]) as f64;
        Ok(BaselineClassifier {
            log_prior: [(docs[0] as f64 / n).ln(), (docs[1] as f64 / n).ln()],
            token_log_likelihood: counts
                .iter()
                .map(|(t, v)| {
                    (t.clone(), [((v[0] + 1) as f64 / denom[0]).ln(), ((v[1] + 1) as f64 / denom[1]).ln()])
                })
                .collect(),
            unk_log_likelihood: [(1.0 / denom[0]).ln(), (1.0 / denom[1]).ln()],
            threshold: DEFAULT_THRESHOLD,
        })
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    /// Posterior probability of the positive class. Tokens outside the
    /// training vocabulary carry no evidence, so input made only of unknown
    /// tokens scores the prior.
    pub fn score(&self, sentence: &str) -> f64 {
        let mut log = self.log_prior;
        for tok in tokenize(sentence) {
            if let Some(ll) = self.token_log_likelihood.get(&tok) {
                log[0] += ll[0];
                log[1] += ll[1];
            }
        }
        1.0 / (1.0 + (log[0] - log[1]).exp())
    }
}

impl SentenceClassifier for BaselineClassifier {
    fn classify(&self, sentence: &str) -> AdeLabel {
        let score = self.score(sentence);
        AdeLabel { is_ade: score >= self.threshold, score }
    }
}

/// Reads `{"text": ..., "label": bool}` lines.
pub fn parse_training_jsonl(text: &str) -> Result<Vec<(String, bool)>, CorpusError> {
    #[derive(Deserialize)]
    struct Row {
        text: String,
        label: bool,
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str::<Row>(l)
                .map(|r| (r.text, r.label))
                .map_err(|e| CorpusError::Training(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> BaselineClassifier {
        BaselineClassifier::train(&[
            ("rash developed", true),
            ("induced hepatotoxicity", true),
            ("study design", false),
            ("trial protocol", false),
        ])
        .unwrap()
    }

    #[test]
    fn hand_computed_posteriors() {
        // Each class has 4 tokens, vocabulary 8, denominator 4 + 8 + 1 = 13.
        let c = fixture();
        let pos = c.classify("hepatotoxicity developed");
        assert!(pos.is_ade);
        assert!((pos.score - 0.8).abs() < 1e-12);
        let neg = c.classify("trial protocol");
        assert!(!neg.is_ade);
        assert!((neg.score - 0.2).abs() < 1e-12);
    }

    #[test]
    fn distributions_normalize() {
        let c = fixture();
        for k in 0..2 {
            let total: f64 = c.token_log_likelihood.values().map(|v| v[k].exp()).sum::<f64>()
                + c.unk_log_likelihood[k].exp();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn no_evidence_uses_priors() {
        let c = fixture();
        assert_eq!(c.score(""), 0.5);
        assert_eq!(c.score("zebra quokka"), 0.5);
        assert!(c.classify("").is_ade, "score at threshold is positive");
    }

    #[test]
    fn deterministic() {
        assert_eq!(fixture(), fixture());
    }

    #[test]
    fn single_class_rejected() {
        let err = BaselineClassifier::train(&[("study design", false)]).unwrap_err();
        assert!(err.to_string().contains("positive"));
        let err = BaselineClassifier::train(&[("rash", true)]).unwrap_err();
        assert!(err.to_string().contains("negative"));
    }
}
