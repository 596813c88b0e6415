//! Classification and regression scores.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("no samples")]
    Empty,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("both classes must be present")]
    SingleClass,
}

/// Binary confusion counts; positive = hard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tn: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tp: usize,
}

impl ConfusionMatrix {
    pub fn new(tn: usize, fp: usize, fn_: usize, tp: usize) -> Self {
        ConfusionMatrix { tn, fp, fn_, tp }
    }

    pub fn from_predictions(actual: &[bool], predicted: &[bool]) -> Self {
        let mut c = ConfusionMatrix::default();
        for (&a, &p) in actual.iter().zip(predicted) {
            match (a, p) {
                (false, false) => c.tn += 1,
                (false, true) => c.fp += 1,
                (true, false) => c.fn_ += 1,
                (true, true) => c.tp += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.tn + self.fp + self.fn_ + self.tp
    }

    /// `(negative, positive)` actual class counts.
    pub fn supports(&self) -> (usize, usize) {
        (self.tn + self.fp, self.fn_ + self.tp)
    }

    /// The same matrix with the roles of the two classes exchanged.
    pub fn swapped(&self) -> Self {
        ConfusionMatrix::new(self.tp, self.fn_, self.fp, self.tn)
    }

    pub fn accuracy(&self) -> f64 {
        if self.total() == 0 {
            0.0
        } else {
            (self.tn + self.tp) as f64 / self.total() as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F1Scores {
    pub not_hard: f64,
    pub hard: f64,
    /// Support-weighted mean of the two class scores.
    pub weighted: f64,
    /// A class score hit 0/0 and was reported as 0.
    pub zero_division: [bool; 2],
}

fn class_f1(tp: usize, fp: usize, fn_: usize) -> (f64, bool) {
    let denom = 2 * tp + fp + fn_;
    if denom == 0 {
        (0.0, true)
    } else {
        (2.0 * tp as f64 / denom as f64, false)
    }
}

/// Per-class and support-weighted F1 scores.
pub fn f1_scores(c: &ConfusionMatrix) -> F1Scores {
    let (hard, zd_hard) = class_f1(c.tp, c.fp, c.fn_);
    let (not_hard, zd_not) = class_f1(c.tn, c.fn_, c.fp);
    let (neg, pos) = c.supports();
    let total = neg + pos;
    let weighted = if total == 0 {
        0.0
    } else {
        (not_hard * neg as f64 + hard * pos as f64) / total as f64
    };
    F1Scores {
        not_hard,
        hard,
        weighted,
        zero_division: [zd_not, zd_hard],
    }
}

/// Area under the ROC curve by the rank-sum statistic; tied scores share
/// their average rank, so each tied positive/negative pair counts 1/2.
pub fn roc_auc<T: Scalar>(scores: &[T], labels: &[bool]) -> Result<T, MetricError> {
    if scores.len() != labels.len() {
        return Err(MetricError::LengthMismatch(scores.len(), labels.len()));
    }
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(MetricError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap_or(std::cmp::Ordering::Equal));
    let mut rank_sum = T::zero();
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // ranks i+1 ..= j+1 share their mean
        let avg = T::of((i + j) as f64 / 2.0 + 1.0);
        for &k in &order[i..=j] {
            if labels[k] {
                rank_sum += avg;
            }
        }
        i = j + 1;
    }
    let p = T::count(pos);
    let auc = (rank_sum - p * (p + T::one()) / T::of(2.0)) / (p * T::count(neg));
    Ok(auc)
}

/// Root mean squared error, its percentage of the mean target, and the
/// coefficient of determination. The last two are `None` when undefined
/// (zero target mean, zero target variance).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionMetrics<T> {
    pub rmse: T,
    pub percentage_rmse: Option<T>,
    pub r2: Option<T>,
}

pub fn regression_metrics<T: Scalar>(
    predicted: &[T],
    actual: &[T],
) -> Result<RegressionMetrics<T>, MetricError> {
    if predicted.len() != actual.len() {
        return Err(MetricError::LengthMismatch(predicted.len(), actual.len()));
    }
    if actual.is_empty() {
        return Err(MetricError::Empty);
    }
    let n = T::count(actual.len());
    let mean = actual.iter().copied().sum::<T>() / n;
    let sse: T = predicted
        .iter()
        .zip(actual)
        .map(|(&p, &a)| (p - a) * (p - a))
        .sum();
    let sst: T = actual.iter().map(|&a| (a - mean) * (a - mean)).sum();
    let rmse = (sse / n).sqrt();
    Ok(RegressionMetrics {
        rmse,
        percentage_rmse: (mean != T::zero()).then(|| T::of(100.0) * rmse / mean),
        r2: (sst > T::zero()).then(|| T::one() - sse / sst),
    })
}
