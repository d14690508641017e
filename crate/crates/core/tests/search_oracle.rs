//! Search and statistics against a brute-force linear scan.

use std::collections::{BTreeMap, BTreeSet};

use drugwatch_core::normalize::{AgeValue, Gender, NormalizedEventRecord, TermKind};
use drugwatch_core::search::{AgeFilter, AgeGroup, Facet, Index, QuerySpec};
use proptest::prelude::*;

const DRUGS: [&str; 8] = ["aspirin", "ibuprofen", "metformin", "warfarin", "amoxicillin", "lisinopril", "insulin", "heparin"];
const EFFECTS: [&str; 10] = [
    "rash", "nausea", "liver failure", "headache", "bleeding", "hypoglycemia", "cough", "anaphylaxis", "fever", "edema",
];

fn age() -> impl Strategy<Value = AgeValue> {
    prop_oneof![
        Just(AgeValue::Unknown),
        (0u32..100).prop_map(|y| AgeValue::Exact(y as f64)),
        Just(AgeValue::Exact(0.25)),
        (2u32..9).prop_map(|d| AgeValue::Range(d as f64 * 10.0, d as f64 * 10.0 + 9.0)),
        Just(AgeValue::Range(2.0, 12.0)),
        Just(AgeValue::Range(65.0, 150.0)),
        Just(AgeValue::Range(0.0, 2.0)),
    ]
}

fn gender() -> impl Strategy<Value = Gender> {
    proptest::sample::select(Gender::ALL.to_vec())
}

fn article() -> impl Strategy<Value = (i32, AgeValue, Gender, BTreeMap<usize, BTreeSet<usize>>)> {
    (
        2010i32..2024,
        age(),
        gender(),
        proptest::collection::btree_map(0..DRUGS.len(), proptest::collection::btree_set(0..EFFECTS.len(), 0..4), 1..3),
    )
}

fn corpus(max_articles: usize) -> impl Strategy<Value = Vec<NormalizedEventRecord>> {
    proptest::collection::vec(article(), 0..max_articles).prop_map(|articles| {
        let mut out = Vec::new();
        for (i, (year, age, gender, drugs)) in articles.into_iter().enumerate() {
            for (d, effects) in drugs {
                out.push(NormalizedEventRecord {
                    pmid: format!("{}", (i * 7919) % 100_003 + 1000),
                    drug: DRUGS[d].into(),
                    effects: effects.into_iter().map(|e| EFFECTS[e].to_string()).collect(),
                    age,
                    gender,
                    year,
                    source_sentences: vec![(0, 0)],
                });
            }
        }
        out
    })
}

fn query() -> impl Strategy<Value = QuerySpec> {
    let age_filter = prop_oneof![
        3 => Just(None),
        1 => (0u32..90).prop_map(|v| Some(AgeFilter::Exact(v as f64))),
        1 => proptest::sample::select(AgeGroup::ALL.to_vec()).prop_map(|g| Some(AgeFilter::Group(g))),
    ];
    let years = prop_oneof![3 => Just(None), 1 => (2010i32..2024, 0i32..6).prop_map(|(a, w)| Some((a, a + w)))];
    (
        any::<bool>(),
        proptest::collection::vec(0usize..10, 1..3),
        proptest::collection::vec(0usize..10, 0..3),
        age_filter,
        proptest::option::weighted(0.3, gender()),
        years,
    )
        .prop_map(|(drug_kind, terms, cof, age, gender, year_range)| {
            let (kind, t_pool, c_pool): (TermKind, &[&str], &[&str]) =
                if drug_kind { (TermKind::Drug, &DRUGS, &EFFECTS) } else { (TermKind::Effect, &EFFECTS, &DRUGS) };
            QuerySpec {
                kind,
                terms: terms.iter().map(|&i| t_pool[i % t_pool.len()].to_string()).collect(),
                cofilter: cof.iter().map(|&i| c_pool[i % c_pool.len()].to_string()).collect(),
                age,
                gender,
                year_range,
            }
        })
}

// Oracle: independent linear scan.

fn own_terms(r: &NormalizedEventRecord, kind: TermKind) -> Vec<String> {
    match kind {
        TermKind::Drug => vec![r.drug.clone()],
        TermKind::Effect => r.effects.iter().cloned().collect(),
    }
}

fn group_of(age: &AgeValue) -> AgeGroup {
    let bounds = |g: AgeGroup| match g {
        AgeGroup::Neonate => (0.0, 28.0 / 365.0),
        AgeGroup::Infant => (28.0 / 365.0, 2.0),
        AgeGroup::Child => (2.0, 12.0),
        AgeGroup::Adolescent => (12.0, 18.0),
        AgeGroup::Adult => (18.0, 65.0),
        AgeGroup::Elderly => (65.0, f64::INFINITY),
        AgeGroup::Unknown => (f64::NAN, f64::NAN),
    };
    for g in AgeGroup::ALL {
        let (a, b) = bounds(g);
        let hit = match *age {
            AgeValue::Exact(v) => a <= v && v < b,
            AgeValue::Range(lo, hi) => a <= lo && hi <= b && lo < b,
            AgeValue::Unknown => false,
        };
        if hit {
            return g;
        }
    }
    AgeGroup::Unknown
}

fn matches(r: &NormalizedEventRecord, q: &QuerySpec) -> bool {
    let own = own_terms(r, q.kind);
    let other = own_terms(r, q.kind.opposite());
    q.terms.iter().any(|t| own.contains(t))
        && (q.cofilter.is_empty() || q.cofilter.iter().any(|t| other.contains(t)))
        && match q.age {
            None => true,
            Some(AgeFilter::Exact(v)) => match r.age {
                AgeValue::Exact(a) => a == v,
                AgeValue::Range(lo, hi) => lo <= v && v <= hi,
                AgeValue::Unknown => false,
            },
            Some(AgeFilter::Group(g)) => group_of(&r.age) == g,
        }
        && q.gender.is_none_or(|g| g == r.gender)
        && q.year_range.is_none_or(|(lo, hi)| lo <= r.year && r.year <= hi)
}

struct Art {
    year: i32,
    group: AgeGroup,
    gender: Gender,
    terms: BTreeSet<String>,
}

fn oracle_articles(recs: &[NormalizedEventRecord], q: &QuerySpec) -> BTreeMap<String, Art> {
    let mut out: BTreeMap<String, Art> = BTreeMap::new();
    for r in recs.iter().filter(|r| matches(r, q)) {
        let a = out.entry(r.pmid.clone()).or_insert(Art {
            year: r.year,
            group: group_of(&r.age),
            gender: r.gender,
            terms: BTreeSet::new(),
        });
        a.terms.extend(own_terms(r, q.kind.opposite()));
    }
    out
}

fn oracle_ranked<'a>(arts: impl Iterator<Item = &'a Art>) -> Vec<(String, usize)> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for a in arts {
        for t in &a.terms {
            *counts.entry(t.clone()).or_default() += 1;
        }
    }
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    v
}

fn count_filters(q: &QuerySpec) -> usize {
    usize::from(!q.cofilter.is_empty()) + usize::from(q.age.is_some()) + usize::from(q.gender.is_some()) + usize::from(q.year_range.is_some())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equals_linear_scan(recs in corpus(300), queries in proptest::collection::vec(query(), 8)) {
        let idx = Index::build(recs.clone()).unwrap();
        for q in &queries {
            let arts = oracle_articles(&recs, q);
            let mut expect: Vec<(&String, &Art)> = arts.iter().collect();
            expect.sort_by(|a, b| b.1.year.cmp(&a.1.year).then(a.0.cmp(b.0)));
            let pmids: Vec<String> = expect.iter().map(|(p, _)| (*p).clone()).collect();
            prop_assert_eq!(idx.search_articles(q), pmids.clone());

            let mut yearly = BTreeMap::new();
            for a in arts.values() { *yearly.entry(a.year).or_insert(0usize) += 1; }
            prop_assert_eq!(idx.yearly_counts(q), yearly.clone());
            prop_assert_eq!(yearly.values().sum::<usize>(), pmids.len());

            let ranked = oracle_ranked(arts.values());
            let total: usize = ranked.iter().map(|x| x.1).sum();
            let full = idx.top_cooccurring(q, usize::MAX);
            prop_assert_eq!(full.iter().map(|t| (t.term.clone(), t.count)).collect::<Vec<_>>(), ranked.clone());
            if !full.is_empty() {
                prop_assert!((full.iter().map(|t| t.proportion).sum::<f64>() - 1.0).abs() < 1e-9);
            }
            let top = idx.top_cooccurring(q, 7);
            for (rank, t) in top.iter().enumerate() {
                prop_assert_eq!(t.rarity_tier, rank / 2 + 1);
                prop_assert!((t.proportion - t.count as f64 / total as f64).abs() < 1e-12);
            }

            let mut demo = BTreeMap::new();
            for a in arts.values() { *demo.entry((a.group, a.gender)).or_insert(0usize) += 1; }
            prop_assert_eq!(idx.demographic_distribution(q), demo.clone());

            for g in AgeGroup::ALL {
                let want: Vec<_> = oracle_ranked(arts.values().filter(|a| a.group == g)).into_iter().take(10).collect();
                let got: Vec<_> = idx.group_breakdown(q, Facet::AgeGroup(g)).into_iter().map(|t| (t.term, t.count)).collect();
                prop_assert_eq!(got, want);
            }
            for g in Gender::ALL {
                let want: Vec<_> = oracle_ranked(arts.values().filter(|a| a.gender == g)).into_iter().take(10).collect();
                let got: Vec<_> = idx.group_breakdown(q, Facet::Gender(g)).into_iter().map(|t| (t.term, t.count)).collect();
                prop_assert_eq!(got, want);
            }
            let cross = idx.cross_breakdown(q, 3);
            prop_assert_eq!(cross.len(), demo.len());
            for (key, cell) in &cross {
                prop_assert_eq!(cell.count, demo[key]);
                let want: Vec<_> = oracle_ranked(arts.values().filter(|a| (a.group, a.gender) == *key)).into_iter().take(3).collect();
                prop_assert_eq!(cell.top.iter().map(|t| (t.term.clone(), t.count)).collect::<Vec<_>>(), want);
            }
        }
    }

    #[test]
    fn filters_never_increase_matches(recs in corpus(120), q in query()) {
        let idx = Index::build(recs).unwrap();
        let bare = QuerySpec { cofilter: vec![], age: None, gender: None, year_range: None, ..q.clone() };
        prop_assume!(count_filters(&q) > 0);
        prop_assert!(idx.search_articles(&q).len() <= idx.search_articles(&bare).len());
    }

    #[test]
    fn rebuild_is_deterministic(recs in corpus(60)) {
        let a = Index::build(recs.clone()).unwrap();
        let b = Index::build(recs).unwrap();
        prop_assert_eq!(a.build_stamp(), b.build_stamp());
        prop_assert_eq!(a, b);
    }
}
