//! Deterministic stand-in for the OpenFDA count endpoint, used to record
//! offline fixtures without network access. Responses have the real wire
//! shape but invented numbers, seeded by the request URL.

use drugwatch_core::faers::fixture_file_name;
use drugwatch_core::{HttpRequest, HttpResponse, HttpTransport, TransportError};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const REACTIONS: [&str; 16] = [
    "NAUSEA", "RASH", "VOMITING", "DIZZINESS", "HEADACHE", "DRUG INEFFECTIVE", "FATIGUE", "DIARRHOEA",
    "PRURITUS", "DYSPNOEA", "HEPATOTOXICITY", "ACUTE KIDNEY INJURY", "THROMBOCYTOPENIA", "ANAPHYLACTIC REACTION",
    "GASTROINTESTINAL HAEMORRHAGE", "PYREXIA",
];
const DRUGS: [&str; 12] = [
    "ASPIRIN", "IBUPROFEN", "ACETAMINOPHEN", "METFORMIN HYDROCHLORIDE", "WARFARIN SODIUM", "AMOXICILLIN",
    "LISINOPRIL", "CARBAMAZEPINE", "ALLOPURINOL", "VANCOMYCIN", "METHOTREXATE", "ATORVASTATIN CALCIUM",
];

pub struct SyntheticFaers;

fn param<'a>(url: &'a str, key: &str) -> Option<&'a str> {
    let query = url.split_once('?')?.1;
    query.split('&').find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
}

pub fn synthesize(url: &str) -> Value {
    let seed = u64::from_str_radix(&fixture_file_name(url)[..16], 16).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = param(url, "count").unwrap_or("");
    let filtered_by_age = url.contains("patientonsetage:");
    let results: Vec<Value> = if count == "patient.patientsex" {
        let scale = if filtered_by_age { 300 } else { 4000 };
        let mut rows: Vec<(u8, u64)> =
            [(2u8, 0.5), (1, 0.4), (0, 0.05)].iter().map(|&(code, w)| (code, (scale as f64 * w * rng.random_range(0.5..1.0)) as u64 + 1)).collect();
        rows.sort_by_key(|r| std::cmp::Reverse(r.1));
        rows.into_iter().map(|(code, n)| json!({ "term": code, "count": n })).collect()
    } else if count == "receivedate" {
        (2015..2024).map(|y| json!({ "time": format!("{y}0101"), "count": rng.random_range(50..900) })).collect()
    } else {
        let vocab: &[&str] = if count.starts_with("patient.reaction") { &REACTIONS } else { &DRUGS };
        let limit: usize = param(url, "limit").and_then(|l| l.parse().ok()).unwrap_or(10);
        let n = limit.min(vocab.len()).min(rng.random_range(6..=12));
        let mut picked: Vec<&str> = vocab.choose_multiple(&mut rng, n).copied().collect();
        picked.sort_unstable();
        let mut c: u64 = if filtered_by_age || url.contains("patientsex:") { 250 } else { 3000 };
        picked
            .into_iter()
            .map(|t| {
                c = (c as f64 * rng.random_range(0.55..0.95)) as u64 + 1;
                json!({ "term": t, "count": c })
            })
            .collect()
    };
    let total: u64 = results.iter().filter_map(|r| r["count"].as_u64()).sum();
    json!({
        "meta": {
            "disclaimer": "Synthetic response generated for offline use; not FAERS data.",
            "results": { "skip": 0, "limit": results.len(), "total": total }
        },
        "results": results
    })
}

impl HttpTransport for SyntheticFaers {
    fn send(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        Ok(HttpResponse { status: 200, body: serde_json::to_string_pretty(&synthesize(&request.url)).unwrap_or_default() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_well_formed() {
        let url = "https://api.fda.gov/drug/event.json?search=patient.drug.openfda.generic_name:\"aspirin\"&count=patient.reaction.reactionmeddrapt.exact&limit=10";
        assert_eq!(synthesize(url), synthesize(url));
        let parsed = drugwatch_core::faers::parse_count_response(&synthesize(url).to_string()).unwrap();
        assert!(!parsed.entries.is_empty() && parsed.entries.len() <= 10);
        assert!(parsed.entries.windows(2).all(|w| w[0].count > w[1].count));
    }
}
