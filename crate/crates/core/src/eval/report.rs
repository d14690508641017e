use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::arguments::{em_f1, token_f1, ArgumentScores};
use super::classification::{classification_metrics, ClassificationMetrics};
use super::{EvalError, Tally};
use crate::extraction::model_json::parse_model_json_strict;
use crate::extraction::{ArgumentRole, PharmaEvent};

/// A line-delimited evaluation file. Each line is either a JSON event array
/// for one sentence or a bare `true`/`false` sentence label.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalFile {
    Events(Vec<Vec<PharmaEvent>>),
    Labels(Vec<bool>),
}

pub fn parse_eval_file(text: &str) -> Result<EvalFile, EvalError> {
    let mut events = Vec::new();
    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| EvalError::Parse { line: i + 1, message };
        match line {
            "true" | "false" => labels.push(line == "true"),
            _ => events.push(parse_model_json_strict(line).map_err(|e| err(e.to_string()))?),
        }
        if !events.is_empty() && !labels.is_empty() {
            return Err(err("file mixes label lines and event lines".into()));
        }
    }
    if labels.is_empty() {
        Ok(EvalFile::Events(events))
    } else {
        Ok(EvalFile::Labels(labels))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub em: ArgumentScores,
    pub token: ArgumentScores,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub classification: Option<ClassificationMetrics>,
    pub extraction: Option<ExtractionReport>,
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn put_tally(map: &mut Map<String, Value>, prefix: &str, t: &Tally) {
    map.insert(format!("{prefix}_p"), round2(t.precision()).into());
    map.insert(format!("{prefix}_r"), round2(t.recall()).into());
    map.insert(format!("{prefix}_f1"), round2(t.f1()).into());
    map.insert(format!("{prefix}_gold"), t.gold.into());
    map.insert(format!("{prefix}_pred"), t.pred.into());
    map.insert(format!("{prefix}_matched"), t.matched.into());
}

impl EvalReport {
    pub fn evaluate(gold: &EvalFile, pred: &EvalFile) -> Result<EvalReport, EvalError> {
        match (gold, pred) {
            (EvalFile::Labels(g), EvalFile::Labels(p)) => {
                Ok(EvalReport { classification: Some(classification_metrics(g, p)?), extraction: None })
            }
            (EvalFile::Events(g), EvalFile::Events(p)) => {
                if g.is_empty() {
                    return Err(EvalError::Empty);
                }
                Ok(EvalReport {
                    classification: None,
                    extraction: Some(ExtractionReport { em: em_f1(g, p)?, token: token_f1(g, p)? }),
                })
            }
            _ => Err(EvalError::Parse { line: 1, message: "gold and prediction files differ in kind".into() }),
        }
    }

    /// Flat JSON object; scores are percentages rounded to two decimals.
    pub fn to_flat_json(&self, per_role: bool) -> Value {
        let mut m = Map::new();
        if let Some(c) = &self.classification {
            m.insert("precision".into(), round2(c.precision).into());
            m.insert("recall".into(), round2(c.recall).into());
            m.insert("f1".into(), round2(c.f1).into());
            m.insert("accuracy".into(), round2(c.accuracy).into());
            for (k, v) in [("tp", c.tp), ("fp", c.fp), ("fn", c.fn_), ("tn", c.tn)] {
                m.insert(k.into(), v.into());
            }
            m.insert("precision_undefined".into(), c.precision_undefined.into());
            m.insert("recall_undefined".into(), c.recall_undefined.into());
        }
        if let Some(x) = &self.extraction {
            for (metric, scores) in [("em", &x.em), ("token", &x.token)] {
                put_tally(&mut m, &format!("{metric}_overall"), &scores.overall);
                put_tally(&mut m, &format!("{metric}_main"), &scores.main);
                put_tally(&mut m, &format!("{metric}_sub"), &scores.sub);
                if per_role {
                    for (role, t) in &scores.per_role {
                        put_tally(&mut m, &format!("{metric}_{}", role.name()), t);
                    }
                }
            }
        }
        Value::Object(m)
    }

    /// Aligned text table.
    pub fn render_table(&self, per_role: bool) -> String {
        let mut out = String::new();
        if let Some(c) = &self.classification {
            writeln!(out, "{:<10} {:>9} {:>9} {:>9} {:>9}", "", "P", "R", "F1", "Accuracy").unwrap();
            writeln!(out, "{:<10} {:>9.2} {:>9.2} {:>9.2} {:>9.2}", "ADE", c.precision, c.recall, c.f1, c.accuracy)
                .unwrap();
            writeln!(out, "tp={} fp={} fn={} tn={}", c.tp, c.fp, c.fn_, c.tn).unwrap();
        }
        if let Some(x) = &self.extraction {
            writeln!(out, "{:<24} {:>8} {:>8} {:>8} {:>8} {:>8}", "scope", "EM_F1", "Tok_F1", "gold", "pred", "match")
                .unwrap();
            let mut rows: Vec<(String, Tally, Tally)> = vec![
                ("main".into(), x.em.main, x.token.main),
                ("sub".into(), x.em.sub, x.token.sub),
                ("overall".into(), x.em.overall, x.token.overall),
            ];
            if per_role {
                for role in ArgumentRole::ALL {
                    if let Some(em) = x.em.per_role.get(&role) {
                        let tok = x.token.per_role.get(&role).copied().unwrap_or_default();
                        rows.push((role.name().to_string(), *em, tok));
                    }
                }
            }
            for (name, em, tok) in rows {
                writeln!(
                    out,
                    "{:<24} {:>8.2} {:>8.2} {:>8} {:>8} {:>8}",
                    name,
                    em.f1(),
                    tok.f1(),
                    em.gold,
                    em.pred,
                    em.matched
                )
                .unwrap();
            }
        }
        out
    }
}
