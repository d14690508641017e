use drugwatch_core::extraction::linearize::{delinearize, linearize};
use drugwatch_core::extraction::repair::repair_json;
use drugwatch_core::extraction::{ArgumentRole, EventType, Lexicon, Lexicons, PharmaEvent, RuleExtractor, Span};
use drugwatch_core::text::char_slice;
use proptest::prelude::*;
use serde_json::Value;

fn span_text() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-z][a-z0-9 .,'/-]{0,20}[a-z0-9]",
        "[a-zA-Z]{1,8}",
        "[a-z \\[\\]]{0,6}[a-z]",
        "\\PC{1,12}",
    ]
    .prop_map(|s| s.trim().to_string())
    .prop_filter("non-empty", |s| !s.is_empty())
}

fn valid_event() -> impl Strategy<Value = PharmaEvent> {
    let roles = proptest::collection::btree_map(
        proptest::sample::select(ArgumentRole::ALL.to_vec()),
        proptest::collection::vec(span_text(), 1..3),
        0..8,
    );
    (prop_oneof![Just(EventType::Ade), Just(EventType::Pte)], roles).prop_map(|(ty, roles)| {
        let mut e = PharmaEvent::new(ty);
        for (role, spans) in &roles {
            for s in spans {
                e.push(*role, Span::new(s.clone()));
            }
            if let Some(parent) = role.parent() {
                if !roles.contains_key(&parent) {
                    e.push(parent, Span::new(spans[0].clone()));
                }
            }
        }
        e
    })
}

fn json_value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        Just(Value::Null),
        any::<bool>().prop_map(Value::Bool),
        any::<i64>().prop_map(Value::from),
        (-1e6f64..1e6).prop_map(Value::from),
        any::<f64>().prop_filter("finite", |f| f.is_finite()).prop_map(Value::from),
        "\\PC{0,8}".prop_map(Value::String),
        "[\"\\\\/\u{8}\u{c}\n\r\t\u{1}a\u{e9}\u{1F600}]{0,6}".prop_map(Value::String),
    ];
    leaf.prop_recursive(4, 40, 6, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..6).prop_map(Value::Array),
            proptest::collection::btree_map("\\PC{0,6}", inner, 0..6)
                .prop_map(|m| Value::Object(m.into_iter().collect())),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn linearize_round_trip(e in valid_event()) {
        prop_assert!(e.validate().is_ok());
        let seq = linearize(&e);
        prop_assert_eq!(delinearize(&seq).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn repair_every_prefix(v in json_value(), pretty in any::<bool>()) {
        let doc = if pretty { serde_json::to_string_pretty(&v).unwrap() } else { serde_json::to_string(&v).unwrap() };
        prop_assert_eq!(repair_json(&doc).unwrap(), doc.clone());
        let bounds: Vec<usize> = doc.char_indices().map(|(i, _)| i).chain([doc.len()]).collect();
        for &b in &bounds {
            let prefix = &doc[..b];
            let fixed = repair_json(prefix).unwrap();
            prop_assert!(serde_json::from_str::<Value>(&fixed).is_ok(), "{prefix:?} -> {fixed:?}");
            prop_assert_eq!(repair_json(&fixed).unwrap(), fixed.clone());
        }
    }

    #[test]
    fn rule_extractor_offsets_and_purity(words in proptest::collection::vec(
        prop_oneof![
            Just("aspirin"), Just("Rash"), Just("liver failure"), Just("a"), Just("6-year-old"), Just("boy"),
            Just("in her sixties"), Just("Ärztin"), Just("."), Just("woman"), Just("failure")
        ], 0..14)) {
        let sentence = words.join(" ");
        let x = RuleExtractor::new(Lexicons {
            drugs: Lexicon::from_terms(["aspirin"]),
            effects: Lexicon::from_terms(["rash", "liver failure", "failure"]),
        }).unwrap();
        let events = x.extract_events(&sentence);
        prop_assert_eq!(&events, &x.extract_events(&sentence));
        for e in &events {
            prop_assert!(e.validate().is_ok());
            for span in e.args.values().flatten() {
                let (s, t) = (span.start.unwrap(), span.end.unwrap());
                prop_assert!(s < t);
                prop_assert_eq!(char_slice(&sentence, s, t), span.text.as_str());
            }
        }
    }
}
