use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{EvalError, Tally};
use crate::extraction::{ArgumentRole, PharmaEvent};

/// One argument occurrence in a sentence. Repeated (role, text) pairs are
/// distinct instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentInstance {
    pub role: ArgumentRole,
    pub text: String,
}

/// Argument instances of a sentence in event order, then role order, then
/// span order.
pub fn instances(events: &[PharmaEvent]) -> Vec<ArgumentInstance> {
    events
        .iter()
        .flat_map(|e| e.args.iter())
        .flat_map(|(role, spans)| spans.iter().map(|s| ArgumentInstance { role: *role, text: s.text.clone() }))
        .collect()
}

/// Tallies split by main roles, sub-roles and each role.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ArgumentScores {
    pub overall: Tally,
    pub main: Tally,
    pub sub: Tally,
    pub per_role: BTreeMap<ArgumentRole, Tally>,
}

impl ArgumentScores {
    fn add(&mut self, role: ArgumentRole, t: Tally) {
        self.overall.add(t);
        if role.is_main() { &mut self.main } else { &mut self.sub }.add(t);
        self.per_role.entry(role).or_default().add(t);
    }
}

fn check_lengths<T>(gold: &[T], pred: &[T]) -> Result<(), EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::LengthMismatch { gold: gold.len(), pred: pred.len() });
    }
    Ok(())
}

/// Exact-match argument F1. A predicted instance is correct when an
/// unmatched gold instance of the same sentence has the same role and
/// span text; gold instances are consumed in order.
pub fn em_f1(gold: &[Vec<PharmaEvent>], pred: &[Vec<PharmaEvent>]) -> Result<ArgumentScores, EvalError> {
    check_lengths(gold, pred)?;
    let mut scores = ArgumentScores::default();
    for (g, p) in gold.iter().zip(pred) {
        let gi = instances(g);
        let pi = instances(p);
        let mut used = vec![false; gi.len()];
        let mut matched: HashMap<ArgumentRole, u64> = HashMap::new();
        for inst in &pi {
            if let Some(j) = (0..gi.len()).find(|&j| !used[j] && gi[j] == *inst) {
                used[j] = true;
                *matched.entry(inst.role).or_default() += 1;
            }
        }
        for role in ArgumentRole::ALL {
            let t = Tally {
                gold: gi.iter().filter(|x| x.role == role).count() as u64,
                pred: pi.iter().filter(|x| x.role == role).count() as u64,
                matched: matched.get(&role).copied().unwrap_or(0),
            };
            if t != Tally::default() {
                scores.add(role, t);
            }
        }
    }
    Ok(scores)
}

pub fn tokens(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_lowercase).collect()
}

/// Size of the multiset intersection of two token lists.
pub fn token_overlap(a: &[String], b: &[String]) -> u64 {
    let mut counts: HashMap<&str, i64> = HashMap::new();
    for t in a {
        *counts.entry(t).or_default() += 1;
    }
    let mut n = 0;
    for t in b {
        if let Some(c) = counts.get_mut(t.as_str()) {
            if *c > 0 {
                *c -= 1;
                n += 1;
            }
        }
    }
    n
}

/// Greedy pairing of gold and predicted spans of one role: repeatedly take
/// the unpaired pair with the largest overlap. Ties go to the pair with the
/// fewest unmatched tokens, then to the pair whose texts sort first as an
/// unordered pair, then to the lowest indices, so swapping gold and
/// prediction yields the same total overlap.
pub fn greedy_overlap(gold: &[&str], pred: &[&str]) -> u64 {
    let gt: Vec<Vec<String>> = gold.iter().map(|s| tokens(s)).collect();
    let pt: Vec<Vec<String>> = pred.iter().map(|s| tokens(s)).collect();
    let mut candidates = Vec::new();
    for (i, g) in gt.iter().enumerate() {
        for (j, p) in pt.iter().enumerate() {
            let o = token_overlap(g, p);
            if o > 0 {
                let (lo, hi) = if gold[i] <= pred[j] { (gold[i], pred[j]) } else { (pred[j], gold[i]) };
                let slack = (g.len() + p.len()) as u64 - 2 * o;
                candidates.push((o, slack, lo, hi, i.min(j), i.max(j), i, j));
            }
        }
    }
    candidates.sort_by(|a, b| {
        b.0.cmp(&a.0).then_with(|| (a.1, a.2, a.3, a.4, a.5, a.6).cmp(&(b.1, b.2, b.3, b.4, b.5, b.6)))
    });
    let mut g_used = vec![false; gold.len()];
    let mut p_used = vec![false; pred.len()];
    let mut total = 0;
    for (o, .., i, j) in candidates {
        if !g_used[i] && !p_used[j] {
            g_used[i] = true;
            p_used[j] = true;
            total += o;
        }
    }
    total
}

/// Token-level argument F1 over whitespace tokens (lowercased), pairing
/// spans per role and sentence with [`greedy_overlap`].
pub fn token_f1(gold: &[Vec<PharmaEvent>], pred: &[Vec<PharmaEvent>]) -> Result<ArgumentScores, EvalError> {
    check_lengths(gold, pred)?;
    let mut scores = ArgumentScores::default();
    for (g, p) in gold.iter().zip(pred) {
        let gi = instances(g);
        let pi = instances(p);
        for role in ArgumentRole::ALL {
            let gs: Vec<&str> = gi.iter().filter(|x| x.role == role).map(|x| x.text.as_str()).collect();
            let ps: Vec<&str> = pi.iter().filter(|x| x.role == role).map(|x| x.text.as_str()).collect();
            if gs.is_empty() && ps.is_empty() {
                continue;
            }
            let t = Tally {
                gold: gs.iter().map(|s| tokens(s).len() as u64).sum(),
                pred: ps.iter().map(|s| tokens(s).len() as u64).sum(),
                matched: greedy_overlap(&gs, &ps),
            };
            scores.add(role, t);
        }
    }
    Ok(scores)
}
