use serde::{Deserialize, Serialize};

use super::{harmonic, EvalError};

/// Confusion-matrix metrics with ADE as the positive class. Scores are
/// percentages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
    /// No positive predictions; precision reported as 0.
    pub precision_undefined: bool,
    /// No positive gold labels; recall reported as 0.
    pub recall_undefined: bool,
}

pub fn classification_metrics(gold: &[bool], pred: &[bool]) -> Result<ClassificationMetrics, EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::LengthMismatch { gold: gold.len(), pred: pred.len() });
    }
    if gold.is_empty() {
        return Err(EvalError::Empty);
    }
    let (mut tp, mut fp, mut fn_, mut tn) = (0u64, 0u64, 0u64, 0u64);
    for (&g, &p) in gold.iter().zip(pred) {
        match (g, p) {
            (true, true) => tp += 1,
            (false, true) => fp += 1,
            (true, false) => fn_ += 1,
            (false, false) => tn += 1,
        }
    }
    let pct = |n: u64, d: u64| if d == 0 { 0.0 } else { 100.0 * n as f64 / d as f64 };
    let precision = pct(tp, tp + fp);
    let recall = pct(tp, tp + fn_);
    Ok(ClassificationMetrics {
        precision,
        recall,
        f1: harmonic(precision, recall),
        accuracy: pct(tp + tn, tp + fp + fn_ + tn),
        tp,
        fp,
        fn_,
        tn,
        precision_undefined: tp + fp == 0,
        recall_undefined: tp + fn_ == 0,
    })
}
