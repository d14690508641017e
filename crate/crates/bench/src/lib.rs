//! Seeded synthetic workloads shared by the benchmarks and the acceptance
//! run. Same seed, same workload.

use drugwatch_core::extraction::{ArgumentRole, EventType, PharmaEvent, Span};
use drugwatch_core::normalize::{AgeValue, Gender, NormalizedEventRecord, TermKind};
use drugwatch_core::search::{AgeFilter, AgeGroup, QuerySpec};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

pub const DRUGS: [&str; 12] = [
    "aspirin", "ibuprofen", "metformin", "warfarin", "amoxicillin", "lisinopril", "insulin", "heparin", "carbamazepine",
    "allopurinol", "vancomycin", "methotrexate",
];
pub const EFFECTS: [&str; 16] = [
    "rash", "nausea", "liver failure", "headache", "bleeding", "hypoglycemia", "cough", "anaphylaxis", "fever", "edema",
    "stevens-johnson syndrome", "neutropenia", "lactic acidosis", "agranulocytosis", "seizure", "pancreatitis",
];

const WORDS: [&str; 14] = [
    "aspirin", "100", "mg", "daily", "boy", "6-year-old", "rash", "[sic]", "acute", "liver", "failure", "naïve",
    "β-blocker", "x[1]",
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn span_text(r: &mut ChaCha8Rng) -> String {
    let n = r.random_range(1..=4);
    (0..n).map(|_| *WORDS.choose(r).unwrap()).collect::<Vec<_>>().join(" ")
}

/// A valid event: every sub-role present has its main role.
pub fn random_event(r: &mut ChaCha8Rng) -> PharmaEvent {
    let ty = if r.random_bool(0.7) { EventType::Ade } else { EventType::Pte };
    let mut e = PharmaEvent::new(ty);
    for role in ArgumentRole::ALL {
        if !r.random_bool(0.35) {
            continue;
        }
        if let Some(parent) = role.parent() {
            if e.spans(parent).is_empty() {
                e.push(parent, Span::new(span_text(r)));
            }
        }
        for _ in 0..r.random_range(1..=2) {
            e.push(role, Span::new(span_text(r)));
        }
    }
    e
}

pub fn random_events(seed: u64, n: usize) -> Vec<PharmaEvent> {
    let mut r = rng(seed);
    (0..n).map(|_| random_event(&mut r)).collect()
}

fn random_string(r: &mut ChaCha8Rng) -> String {
    const CHARS: [char; 14] = ['a', 'b', 'z', ' ', '"', '\\', '/', '\n', '\t', 'é', '€', '😀', '[', '{'];
    (0..r.random_range(0..8)).map(|_| *CHARS.choose(r).unwrap()).collect()
}

fn random_value(r: &mut ChaCha8Rng, depth: u32) -> Value {
    let leaf = depth == 0 || r.random_bool(0.4);
    if leaf {
        return match r.random_range(0..6) {
            0 => Value::Null,
            1 => Value::Bool(r.random()),
            2 => Value::from(r.random_range(-1_000_000i64..1_000_000)),
            3 => Value::from(r.random_range(-1e6f64..1e6)),
            4 => Value::from(r.random::<f64>() * 1e-300),
            _ => Value::String(random_string(r)),
        };
    }
    let n = r.random_range(0..5);
    if r.random_bool(0.5) {
        Value::Array((0..n).map(|_| random_value(r, depth - 1)).collect())
    } else {
        let mut m = Map::new();
        for _ in 0..n {
            m.insert(random_string(r), random_value(r, depth - 1));
        }
        Value::Object(m)
    }
}

/// Valid JSON documents, compact or pretty printed, with an object or
/// array at the top.
pub fn random_json_docs(seed: u64, n: usize) -> Vec<String> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let mut v = random_value(&mut r, 4);
            if !v.is_object() && !v.is_array() {
                v = Value::Array(vec![v]);
            }
            if r.random_bool(0.5) {
                serde_json::to_string_pretty(&v).unwrap()
            } else {
                v.to_string()
            }
        })
        .collect()
}

fn random_age(r: &mut ChaCha8Rng) -> AgeValue {
    match r.random_range(0..7) {
        0 => AgeValue::Unknown,
        1 => AgeValue::Exact(r.random_range(0.0..0.2)),
        2 | 3 => AgeValue::Exact(r.random_range(0..100) as f64),
        4 => {
            let d = r.random_range(2..10) as f64 * 10.0;
            AgeValue::Range(d, d + 9.0)
        }
        5 => AgeValue::Range(2.0, 12.0),
        _ => AgeValue::Range(65.0, 150.0),
    }
}

/// Records for `articles` distinct pmids, one to three drugs each.
pub fn synthetic_records(seed: u64, articles: usize) -> Vec<NormalizedEventRecord> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for i in 0..articles {
        let (year, age) = (r.random_range(2005..2024), random_age(&mut r));
        let gender = *Gender::ALL.choose(&mut r).unwrap();
        let n_drugs = r.random_range(1..=3);
        for drug in DRUGS.choose_multiple(&mut r, n_drugs) {
            let n_eff = r.random_range(0..=4);
            let effects = EFFECTS.choose_multiple(&mut r, n_eff).map(|s| s.to_string()).collect();
            out.push(NormalizedEventRecord {
                pmid: format!("{}", 40_000_000 + i * 13),
                drug: drug.to_string(),
                effects,
                age,
                gender,
                year,
                source_sentences: vec![(0, 0)],
            });
        }
    }
    out
}

pub fn random_query(r: &mut ChaCha8Rng) -> QuerySpec {
    let drug_kind = r.random_bool(0.5);
    let (kind, pool, other): (TermKind, &[&str], &[&str]) =
        if drug_kind { (TermKind::Drug, &DRUGS, &EFFECTS) } else { (TermKind::Effect, &EFFECTS, &DRUGS) };
    let pick = |r: &mut ChaCha8Rng, p: &[&str], n: usize| -> Vec<String> { p.choose_multiple(r, n).map(|s| s.to_string()).collect() };
    let n_terms = r.random_range(1..=3);
    let n_cof = if r.random_bool(0.3) { r.random_range(1..=2) } else { 0 };
    let mut q = QuerySpec::new(kind, pick(r, pool, n_terms)).with_cofilter(pick(r, other, n_cof));
    match r.random_range(0..6) {
        0 => q = q.with_age(AgeFilter::Exact(r.random_range(0..90) as f64)),
        1 => q = q.with_age(AgeFilter::Group(*AgeGroup::ALL.choose(r).unwrap())),
        _ => {}
    }
    if r.random_bool(0.3) {
        q = q.with_gender(*Gender::ALL.choose(r).unwrap());
    }
    if r.random_bool(0.3) {
        let lo = r.random_range(2005..2024);
        q = q.with_years(lo, lo + r.random_range(0..8));
    }
    q
}

pub fn random_queries(seed: u64, n: usize) -> Vec<QuerySpec> {
    let mut r = rng(seed);
    (0..n).map(|_| random_query(&mut r)).collect()
}
