//! Evaluation: classification metrics, argument-level EM/Token F1 and
//! deterministic dataset splits.

pub mod arguments;
pub mod classification;
pub mod report;
pub mod split;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use arguments::{em_f1, instances, token_f1, token_overlap, ArgumentScores, ArgumentInstance};
pub use classification::{classification_metrics, ClassificationMetrics};
pub use report::{parse_eval_file, EvalFile, EvalReport};
pub use split::split_dataset;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("gold and prediction lengths differ ({gold} vs {pred})")]
    LengthMismatch { gold: usize, pred: usize },
    #[error("nothing to evaluate")]
    Empty,
    #[error("ratios must be non-negative and sum to 1 (got {0:?})")]
    BadRatios([f64; 3]),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Gold/predicted/matched counts behind a score. For Token F1 the units
/// are tokens, otherwise argument instances or labels.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub gold: u64,
    pub pred: u64,
    pub matched: u64,
}

impl Tally {
    pub fn add(&mut self, other: Tally) {
        self.gold += other.gold;
        self.pred += other.pred;
        self.matched += other.matched;
    }

    /// Precision in percent; 0 when nothing was predicted.
    pub fn precision(&self) -> f64 {
        ratio(self.matched, self.pred)
    }

    /// Recall in percent; 0 when there is no gold.
    pub fn recall(&self) -> f64 {
        ratio(self.matched, self.gold)
    }

    pub fn f1(&self) -> f64 {
        harmonic(self.precision(), self.recall())
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

pub(crate) fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}
