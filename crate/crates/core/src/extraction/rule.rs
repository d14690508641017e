use std::path::Path;

use super::lexicon::Lexicon;
use super::model_json::events_to_json;
use super::schema::{ArgumentRole, EventType, PharmaEvent, Span};
use super::{Extraction, ExtractionError, Extractor};
use crate::normalize::age::find_age_mentions;
use crate::text::{char_slice, find_word_occurrences};

const GENDER_NOUNS: [&str; 14] = [
    "man", "men", "male", "boy", "boys", "gentleman", "woman", "women", "female", "girl", "girls", "lady",
    "males", "females",
];

#[derive(Debug, Clone, Default)]
pub struct Lexicons {
    pub drugs: Lexicon,
    pub effects: Lexicon,
}

impl Lexicons {
    pub fn load(drugs: &Path, effects: &Path) -> Result<Self, ExtractionError> {
        let read = |p: &Path| {
            Lexicon::load(p).map_err(|e| ExtractionError::Config(format!("cannot read lexicon {}: {e}", p.display())))
        };
        Ok(Lexicons { drugs: read(drugs)?, effects: read(effects)? })
    }
}

/// Lexicon and pattern based extractor.
///
/// Emits at most one ADE event per sentence, and only when at least one
/// drug and one effect term are found. Drug mentions fill both `treatment`
/// and `treatment.drug`; age and gender mentions fill the matching
/// `subject.*` roles and `subject` covers all of them.
#[derive(Debug, Clone)]
pub struct RuleExtractor {
    lexicons: Lexicons,
}

impl RuleExtractor {
    pub const NAME: &'static str = "rule_based";

    pub fn new(lexicons: Lexicons) -> Result<Self, ExtractionError> {
        if lexicons.drugs.is_empty() || lexicons.effects.is_empty() {
            return Err(ExtractionError::Config("rule extractor needs non-empty drug and effect lexicons".into()));
        }
        Ok(RuleExtractor { lexicons })
    }

    pub fn extract_events(&self, sentence: &str) -> Vec<PharmaEvent> {
        let drugs = self.lexicons.drugs.scan(sentence);
        let effects = self.lexicons.effects.scan(sentence);
        if drugs.is_empty() || effects.is_empty() {
            return Vec::new();
        }
        let span = |(s, e): (usize, usize)| Span::with_offsets(char_slice(sentence, s, e), s, e);

        let ages = find_age_mentions(sentence);
        let mut genders: Vec<(usize, usize)> =
            GENDER_NOUNS.iter().flat_map(|w| find_word_occurrences(sentence, w)).collect();
        genders.sort_unstable();
        genders.dedup();

        let mut event = PharmaEvent::new(EventType::Ade);
        let subject_bounds = ages.iter().chain(&genders).fold(None, |acc: Option<(usize, usize)>, &(s, e)| {
            Some(acc.map_or((s, e), |(a, b)| (a.min(s), b.max(e))))
        });
        if let Some(bounds) = subject_bounds {
            event.push(ArgumentRole::Subject, span(bounds));
        }
        for &m in &ages {
            event.push(ArgumentRole::SubjectAge, span(m));
        }
        for &m in &genders {
            event.push(ArgumentRole::SubjectGender, span(m));
        }
        for &m in &drugs {
            event.push(ArgumentRole::Treatment, span(m));
            event.push(ArgumentRole::TreatmentDrug, span(m));
        }
        for &m in &effects {
            event.push(ArgumentRole::Effect, span(m));
        }
        vec![event]
    }
}

impl Extractor for RuleExtractor {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn extract(&self, sentence: &str) -> Result<Extraction, ExtractionError> {
        let events = self.extract_events(sentence);
        let raw = events_to_json(&events).to_string();
        Ok(Extraction { events, raw, warnings: Vec::new() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ArgumentRole::*;

    fn extractor() -> RuleExtractor {
        RuleExtractor::new(Lexicons {
            drugs: Lexicon::from_terms(["aspirin"]),
            effects: Lexicon::from_terms(["rash", "liver failure", "failure"]),
        })
        .unwrap()
    }

    fn texts(e: &PharmaEvent, role: ArgumentRole) -> Vec<&str> {
        e.spans(role).iter().map(|s| s.text.as_str()).collect()
    }

    #[test]
    fn aspirin_boy_sentence() {
        let events = extractor().extract_events("A 6-year-old boy developed rash after aspirin.");
        assert_eq!(events.len(), 1);
        let e = &events[0];
        assert_eq!(e.event_type, EventType::Ade);
        assert_eq!(texts(e, TreatmentDrug), vec!["aspirin"]);
        assert_eq!(texts(e, Effect), vec!["rash"]);
        assert_eq!(texts(e, SubjectAge), vec!["6-year-old"]);
        assert_eq!(texts(e, SubjectGender), vec!["boy"]);
        assert_eq!(texts(e, Subject), vec!["6-year-old boy"]);
        assert!(e.validate().is_ok());
    }

    #[test]
    fn no_lexicon_hit_no_event() {
        assert!(extractor().extract_events("The protocol was approved.").is_empty());
        assert!(extractor().extract_events("Aspirin was given.").is_empty());
    }

    #[test]
    fn longest_effect_match() {
        let events = extractor().extract_events("Aspirin caused acute liver failure.");
        assert_eq!(texts(&events[0], Effect), vec!["liver failure"]);
    }

    #[test]
    fn offsets_index_the_sentence() {
        let s = "Ein 70-jähriger Mann: aspirin-associated rash in an elderly woman.";
        for e in extractor().extract_events(s) {
            for spans in e.args.values() {
                for sp in spans {
                    assert_eq!(char_slice(s, sp.start.unwrap(), sp.end.unwrap()), sp.text);
                }
            }
        }
    }

    #[test]
    fn empty_lexicons_rejected() {
        assert!(RuleExtractor::new(Lexicons::default()).is_err());
    }
}
