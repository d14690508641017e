use std::collections::BTreeSet;

use drugwatch_core::corpus::sentence::split_sentences;
use drugwatch_core::corpus::BaselineClassifier;
use drugwatch_core::extraction::{ArgumentRole, EventType, PharmaEvent};
use drugwatch_core::normalize::{
    merge_by_drug, normalize_age, normalize_gender, normalize_term, Gender, SourcedEvent, SynonymTable, TermKind,
};
use drugwatch_core::text::char_slice;
use proptest::prelude::*;

fn abstract_text() -> impl Strategy<Value = String> {
    let word = prop_oneof![
        "[A-Za-z]{1,8}", "[0-9]{1,3}", Just("e.g.".to_string()), Just("et al.".to_string()), Just("Dr.".to_string()),
        Just("Fig.".to_string()), Just("vs.".to_string()), "[A-Z][a-z]{0,6}[.!?]", "\\PC{1,3}",
    ];
    let sep = prop_oneof![Just(" "), Just("  "), Just("\n"), Just("\t "), Just("")];
    (proptest::collection::vec((word, sep), 0..30), "[ \n]{0,2}", "[ \n]{0,2}").prop_map(|(parts, lead, trail)| {
        let body: String = parts.into_iter().map(|(w, s)| format!("{w}{s}")).collect();
        format!("{lead}{body}{trail}")
    })
}

fn synonyms() -> SynonymTable {
    SynonymTable::parse("ten\ttoxic epidermal necrolysis\nasa\taspirin\nacetylsalicylic acid\tasa\ntylenol\tacetaminophen 500 mg\n")
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sentences_reconstruct_the_abstract(text in abstract_text()) {
        let sentences = split_sentences("1", &text);
        let mut rebuilt = String::new();
        let mut cursor = 0;
        for (i, s) in sentences.iter().enumerate() {
            prop_assert_eq!(s.index, i);
            let gap = char_slice(&text, cursor, s.char_span.0);
            prop_assert!(gap.chars().all(char::is_whitespace));
            prop_assert_eq!(char_slice(&text, s.char_span.0, s.char_span.1), s.text.as_str());
            prop_assert!(!s.text.is_empty());
            rebuilt.push_str(gap);
            rebuilt.push_str(&s.text);
            cursor = s.char_span.1;
        }
        let tail = char_slice(&text, cursor, text.chars().count());
        prop_assert!(tail.chars().all(char::is_whitespace));
        rebuilt.push_str(tail);
        prop_assert_eq!(rebuilt, text);
    }

    #[test]
    fn classifier_is_deterministic(
        docs in proptest::collection::vec(("[a-z]{1,6}( [a-z]{1,6}){0,4}", any::<bool>()), 2..20),
        probe in "[a-z ]{0,30}",
    ) {
        let mut docs = docs;
        docs.push(("adverse".into(), true));
        docs.push(("design".into(), false));
        let a = BaselineClassifier::train(&docs).unwrap();
        let b = BaselineClassifier::train(&docs).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.score(&probe).to_bits(), b.score(&probe).to_bits());
        let s = a.score(&probe);
        prop_assert!((0.0..=1.0).contains(&s));
    }

    #[test]
    fn term_normalization_is_idempotent(
        span in "[ \"'(]{0,2}[A-Za-z]{1,8}( [A-Za-z]{1,8}){0,2}( [0-9]{1,3}(\\.5)? ?(mg|g|mcg|ml|iu)(/day)?)?( (oral|tablets|iv))?[ .,)]{0,2}",
        drug in any::<bool>(),
    ) {
        let kind = if drug { TermKind::Drug } else { TermKind::Effect };
        let syn = synonyms();
        if let Ok(once) = normalize_term(&span, kind, &syn) {
            prop_assert_eq!(normalize_term(&once, kind, &syn).unwrap(), once);
        }
    }

    #[test]
    fn age_and_gender_idempotent_on_canonical_form(
        span in prop_oneof![
            "[0-9]{1,2}[- ]years?[- ]old", "aged [0-9]{1,2}", "[0-9]{1,2} ?(yo|y/o)", "[0-9]{1,2} (months|weeks|days)",
            "in (his|her|their) (twenties|thirties|forties|fifties|sixties|seventies|eighties|nineties)",
            "(neonate|infant|child|adolescent|teenager|adult|elderly)", "[a-z ]{0,12}",
        ],
        g in "[a-z ]{0,12}|(a|the) (man|woman|boy|girl|patient)",
    ) {
        let age = normalize_age(&span);
        prop_assert_eq!(normalize_age(&age.canonical_phrase()), age);
        let gender = normalize_gender(&g);
        prop_assert_eq!(normalize_gender(gender.as_str()), gender);
    }

    #[test]
    fn merge_conserves_pairs_and_ignores_order(
        raw in proptest::collection::vec((
            proptest::collection::vec(proptest::sample::select(vec!["Aspirin", "ASA", "ibuprofen 200 mg", "Tylenol", "warfarin"]), 0..3),
            proptest::collection::vec(proptest::sample::select(vec!["rash", "TEN", "Nausea.", "liver failure"]), 0..3),
            proptest::sample::select(vec!["", "6-year-old", "in her sixties", "woman", "elderly man"]),
        ), 0..8),
        seed in any::<u64>(),
    ) {
        let syn = synonyms();
        let events: Vec<SourcedEvent> = raw.iter().enumerate().map(|(i, (drugs, effects, subject))| {
            let mut e = PharmaEvent::new(EventType::Ade);
            for d in drugs {
                e = e.with(ArgumentRole::Treatment, d).with(ArgumentRole::TreatmentDrug, d);
            }
            for x in effects {
                e = e.with(ArgumentRole::Effect, x);
            }
            if !subject.is_empty() {
                e = e.with(ArgumentRole::Subject, subject);
            }
            SourcedEvent { sentence_index: i, ordinal: 0, event: e }
        }).collect();

        let mut expected = BTreeSet::new();
        for (drugs, effects, _) in &raw {
            for d in drugs {
                for x in effects {
                    expected.insert((normalize_term(d, TermKind::Drug, &syn).unwrap(), normalize_term(x, TermKind::Effect, &syn).unwrap()));
                }
            }
        }
        let out = merge_by_drug("1", 2020, &events, &syn);
        let got: BTreeSet<(String, String)> = out.records.iter()
            .flat_map(|r| r.effects.iter().map(move |e| (r.drug.clone(), e.clone())))
            .collect();
        prop_assert_eq!(got, expected);
        prop_assert_eq!(out.events_without_drug, raw.iter().filter(|r| r.0.is_empty()).count());
        let drugs: BTreeSet<&str> = out.records.iter().map(|r| r.drug.as_str()).collect();
        prop_assert_eq!(drugs.len(), out.records.len());

        let mut shuffled = events.clone();
        let n = shuffled.len();
        if n > 1 {
            shuffled.rotate_left((seed as usize) % n);
            shuffled.swap(0, n - 1);
        }
        prop_assert_eq!(merge_by_drug("1", 2020, &shuffled, &syn), out.clone());
        if let Some(r) = out.records.first() {
            prop_assert!(Gender::ALL.contains(&r.gender));
        }
    }
}
