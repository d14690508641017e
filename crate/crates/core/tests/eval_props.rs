use std::collections::HashMap;

use drugwatch_core::eval::arguments::{em_f1, token_f1, ArgumentScores};
use drugwatch_core::eval::{classification_metrics, Tally};
use drugwatch_core::extraction::{ArgumentRole, EventType, PharmaEvent};
use proptest::prelude::*;

type Sentence = Vec<PharmaEvent>;

fn event() -> impl Strategy<Value = PharmaEvent> {
    proptest::collection::vec(
        (proptest::sample::select(ArgumentRole::ALL.to_vec()), proptest::sample::select(vec![
            "aspirin", "rash", "liver failure", "acute liver failure", "a boy", "6-year-old boy", "oral", "Rash",
        ])),
        0..5,
    )
    .prop_map(|args| args.into_iter().fold(PharmaEvent::new(EventType::Ade), |e, (r, t)| e.with(r, t)))
}

fn dataset() -> impl Strategy<Value = (Vec<Sentence>, Vec<Sentence>)> {
    (1usize..8).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::vec(event(), 0..3), n),
            proptest::collection::vec(proptest::collection::vec(event(), 0..3), n),
        )
    })
}

fn token_disjoint(pred: Vec<Sentence>) -> Vec<Sentence> {
    pred.into_iter()
        .map(|sentence| {
            let mut seen: HashMap<ArgumentRole, Vec<String>> = HashMap::new();
            sentence
                .into_iter()
                .map(|e| {
                    let mut out = PharmaEvent::new(e.event_type);
                    for (r, spans) in &e.args {
                        for sp in spans {
                            let toks: Vec<String> = sp.text.split_whitespace().map(str::to_lowercase).collect();
                            let used = seen.entry(*r).or_default();
                            if toks.iter().all(|t| !used.contains(t)) {
                                used.extend(toks);
                                out = out.with(*r, &sp.text);
                            }
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn swapped(t: Tally) -> Tally {
    Tally { gold: t.pred, pred: t.gold, matched: t.matched }
}

fn check_symmetry(a: &ArgumentScores, b: &ArgumentScores) -> Result<(), TestCaseError> {
    prop_assert_eq!(swapped(a.overall), b.overall);
    prop_assert_eq!(swapped(a.main), b.main);
    prop_assert_eq!(swapped(a.sub), b.sub);
    prop_assert!((a.overall.precision() - b.overall.recall()).abs() < 1e-9);
    prop_assert!((a.overall.f1() - b.overall.f1()).abs() < 1e-9);
    Ok(())
}

fn check_micro(s: &ArgumentScores) -> Result<(), TestCaseError> {
    let mut sum = Tally::default();
    for t in s.per_role.values() {
        sum.add(*t);
    }
    prop_assert_eq!(sum, s.overall);
    let mut scopes = s.main;
    scopes.add(s.sub);
    prop_assert_eq!(scopes, s.overall);
    for t in [s.overall, s.main, s.sub] {
        let (p, r, f) = (t.precision(), t.recall(), t.f1());
        prop_assert!((0.0..=100.0).contains(&f));
        if p + r > 0.0 {
            prop_assert!((f - 2.0 * p * r / (p + r)).abs() < 1e-9);
        }
    }
    Ok(())
}

/// Exact-match oracle: per sentence and role, the number of matches is the
/// multiset intersection of span texts.
fn em_oracle(gold: &[Sentence], pred: &[Sentence]) -> Tally {
    let mut t = Tally::default();
    for (g, p) in gold.iter().zip(pred) {
        let bag = |s: &Sentence| {
            let mut m: HashMap<(ArgumentRole, String), u64> = HashMap::new();
            for e in s {
                for (r, spans) in &e.args {
                    for sp in spans {
                        *m.entry((*r, sp.text.clone())).or_default() += 1;
                    }
                }
            }
            m
        };
        let (bg, bp) = (bag(g), bag(p));
        t.gold += bg.values().sum::<u64>();
        t.pred += bp.values().sum::<u64>();
        t.matched += bg.iter().map(|(k, v)| (*v).min(bp.get(k).copied().unwrap_or(0))).sum::<u64>();
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn em_matches_oracle((gold, pred) in dataset()) {
        prop_assert_eq!(em_f1(&gold, &pred).unwrap().overall, em_oracle(&gold, &pred));
    }

    #[test]
    fn symmetry_and_micro_average((gold, pred) in dataset()) {
        let em = em_f1(&gold, &pred).unwrap();
        check_symmetry(&em, &em_f1(&pred, &gold).unwrap())?;
        check_micro(&em)?;
        let tok = token_f1(&gold, &pred).unwrap();
        check_symmetry(&tok, &token_f1(&pred, &gold).unwrap())?;
        check_micro(&tok)?;
    }

    #[test]
    fn perfect_prediction((gold, _) in dataset()) {
        let em = em_f1(&gold, &gold).unwrap();
        let tok = token_f1(&gold, &gold).unwrap();
        if em.overall.gold > 0 {
            prop_assert_eq!(em.overall.f1(), 100.0);
            prop_assert_eq!(tok.overall.f1(), 100.0);
        }
    }

    #[test]
    fn deleting_a_correct_prediction_never_helps((gold, pred) in dataset(), pick in any::<prop::sample::Index>()) {
        // Redundant predictions make any deletion of one copy an improvement,
        // so predictions of one role in one sentence are kept token-disjoint.
        let mut pred = pred;
        for (g, p) in gold.iter().zip(pred.iter_mut()) {
            p.splice(0..0, g.iter().take(1).cloned());
        }
        let pred = token_disjoint(pred);
        let mut correct = Vec::new();
        for (si, (g, p)) in gold.iter().zip(&pred).enumerate() {
            for (ei, e) in p.iter().enumerate() {
                for (r, spans) in &e.args {
                    for (k, sp) in spans.iter().enumerate() {
                        if g.iter().any(|ge| ge.spans(*r).iter().any(|x| x.text == sp.text)) {
                            correct.push((si, ei, *r, k));
                        }
                    }
                }
            }
        }
        prop_assume!(!correct.is_empty());
        let (si, ei, r, k) = correct[pick.index(correct.len())];
        let mut reduced = pred.clone();
        let spans = reduced[si][ei].args.get_mut(&r).unwrap();
        spans.remove(k);
        if spans.is_empty() {
            reduced[si][ei].args.remove(&r);
        }
        prop_assert!(em_f1(&gold, &reduced).unwrap().overall.f1() <= em_f1(&gold, &pred).unwrap().overall.f1() + 1e-9);
        prop_assert!(token_f1(&gold, &reduced).unwrap().overall.f1() <= token_f1(&gold, &pred).unwrap().overall.f1() + 1e-9);
    }

    #[test]
    fn classification_matches_tally(pairs in proptest::collection::vec((any::<bool>(), any::<bool>()), 1..200)) {
        let gold: Vec<bool> = pairs.iter().map(|p| p.0).collect();
        let pred: Vec<bool> = pairs.iter().map(|p| p.1).collect();
        let m = classification_metrics(&gold, &pred).unwrap();
        let tp = pairs.iter().filter(|p| p.0 && p.1).count() as u64;
        let fp = pairs.iter().filter(|p| !p.0 && p.1).count() as u64;
        let fn_ = pairs.iter().filter(|p| p.0 && !p.1).count() as u64;
        prop_assert_eq!((m.tp, m.fp, m.fn_, m.tn), (tp, fp, fn_, pairs.len() as u64 - tp - fp - fn_));
        let s = classification_metrics(&pred, &gold).unwrap();
        prop_assert!((m.precision - s.recall).abs() < 1e-9 && (m.f1 - s.f1).abs() < 1e-9);
    }
}
