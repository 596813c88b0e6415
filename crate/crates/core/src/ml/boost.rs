//! Gradient-boosted tree ensembles.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::linear::sigmoid;
use super::tree::{RegressionTree, TreeParams};
use super::MlError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostParams {
    pub trees: usize,
    pub learning_rate: f64,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    /// Fraction of rows drawn (without replacement) for each tree.
    pub subsample: f64,
    /// Added to the hessian sum of classifier leaves.
    pub leaf_l2: f64,
    pub seed: u64,
}

impl Default for BoostParams {
    fn default() -> Self {
        BoostParams {
            trees: 100,
            learning_rate: 0.1,
            max_depth: 3,
            min_samples_leaf: 3,
            subsample: 1.0,
            leaf_l2: 1.0,
            seed: 0,
        }
    }
}

impl BoostParams {
    fn tree_params(&self) -> TreeParams {
        TreeParams {
            max_depth: self.max_depth,
            min_samples_leaf: self.min_samples_leaf,
        }
    }

    fn rows(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..n).collect();
        if self.subsample < 1.0 {
            let keep = ((self.subsample * n as f64).round() as usize).clamp(1, n);
            idx.shuffle(rng);
            idx.truncate(keep);
            idx.sort_unstable();
        }
        idx
    }
}

/// Additive log-odds model: `F(x) = base + lr * sum_t tree_t(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedClassifier {
    pub base: f64,
    pub learning_rate: f64,
    pub trees: Vec<RegressionTree>,
}

impl BoostedClassifier {
    /// Each stage fits a least-squares tree to the weighted logistic
    /// gradient `w (y - p)`, then sets leaf values by one Newton step
    /// `sum g / (sum h + leaf_l2)` with `h = w p (1 - p)`.
    pub fn fit(
        x: &[Vec<f64>],
        y: &[bool],
        sample_weights: &[f64],
        params: &BoostParams,
    ) -> Result<Self, MlError> {
        let n = x.len();
        let wsum: f64 = sample_weights.iter().sum();
        let wpos: f64 = y.iter().zip(sample_weights).filter(|p| *p.0).map(|p| p.1).sum();
        let prior = (wpos / wsum).clamp(1e-6, 1.0 - 1e-6);
        let base = (prior / (1.0 - prior)).ln();
        let mut f = vec![base; n];
        let mut trees = Vec::with_capacity(params.trees);
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut grad = vec![0.0; n];
        let mut hess = vec![0.0; n];
        for stage in 0..params.trees {
            for i in 0..n {
                let p = sigmoid(f[i]);
                let t = if y[i] { 1.0 } else { 0.0 };
                grad[i] = sample_weights[i] * (t - p);
                hess[i] = sample_weights[i] * p * (1.0 - p);
            }
            let rows = params.rows(n, &mut rng);
            let tree = RegressionTree::fit(x, &grad, rows, params.tree_params(), |leaf| {
                let g: f64 = leaf.iter().map(|&i| grad[i]).sum();
                let h: f64 = leaf.iter().map(|&i| hess[i]).sum();
                g / (h + params.leaf_l2)
            });
            for (fi, row) in f.iter_mut().zip(x) {
                *fi += params.learning_rate * tree.predict(row);
            }
            if f.iter().any(|v| !v.is_finite()) {
                return Err(MlError::Diverged {
                    epoch: stage,
                    loss: f64::NAN,
                });
            }
            trees.push(tree);
        }
        Ok(BoostedClassifier {
            base,
            learning_rate: params.learning_rate,
            trees,
        })
    }

    pub fn log_odds(&self, row: &[f64]) -> f64 {
        self.base + self.learning_rate * self.trees.iter().map(|t| t.predict(row)).sum::<f64>()
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        sigmoid(self.log_odds(row))
    }
}

/// Squared-loss boosting on residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedRegressor {
    pub base: f64,
    pub learning_rate: f64,
    pub trees: Vec<RegressionTree>,
}

impl BoostedRegressor {
    pub fn fit(x: &[Vec<f64>], y: &[f64], params: &BoostParams) -> Result<Self, MlError> {
        if x.is_empty() {
            return Err(MlError::EmptyTraining);
        }
        let n = x.len();
        let base = y.iter().sum::<f64>() / n as f64;
        if !base.is_finite() {
            return Err(MlError::NonFiniteTarget);
        }
        let mut f = vec![base; n];
        let mut resid = vec![0.0; n];
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut trees = Vec::with_capacity(params.trees);
        for _ in 0..params.trees {
            for i in 0..n {
                resid[i] = y[i] - f[i];
            }
            let rows = params.rows(n, &mut rng);
            let tree = RegressionTree::fit(x, &resid, rows, params.tree_params(), |leaf| {
                leaf.iter().map(|&i| resid[i]).sum::<f64>() / leaf.len() as f64
            });
            for (fi, row) in f.iter_mut().zip(x) {
                *fi += params.learning_rate * tree.predict(row);
            }
            trees.push(tree);
        }
        Ok(BoostedRegressor {
            base,
            learning_rate: params.learning_rate,
            trees,
        })
    }

    pub fn predict(&self, row: &[f64]) -> f64 {
        self.base + self.learning_rate * self.trees.iter().map(|t| t.predict(row)).sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifier_learns_a_threshold() {
        let x: Vec<Vec<f64>> = (0..100).map(|i| vec![i as f64 / 100.0, ((i * 13) % 7) as f64]).collect();
        let y: Vec<bool> = (0..100).map(|i| i >= 90).collect();
        let m = BoostedClassifier::fit(&x, &y, &[1.0; 100], &BoostParams::default()).unwrap();
        for (row, &label) in x.iter().zip(&y) {
            assert_eq!(m.score(row) > 0.5, label);
        }
    }

    #[test]
    fn regressor_fits_smooth_function() {
        let x: Vec<Vec<f64>> = (0..200).map(|i| vec![i as f64 / 200.0]).collect();
        let y: Vec<f64> = x.iter().map(|r| 1.0 + 3.0 * r[0] * r[0]).collect();
        let p = BoostParams { trees: 200, ..BoostParams::default() };
        let m = BoostedRegressor::fit(&x, &y, &p).unwrap();
        let pred: Vec<f64> = x.iter().map(|r| m.predict(r)).collect();
        let r2 = super::super::metrics::regression_metrics(&pred, &y).unwrap().r2.unwrap();
        assert!(r2 > 0.99, "{r2}");
    }

    #[test]
    fn subsampling_is_seeded() {
        let x: Vec<Vec<f64>> = (0..60).map(|i| vec![(i * 17 % 60) as f64]).collect();
        let y: Vec<bool> = (0..60).map(|i| i % 4 == 0).collect();
        let p = BoostParams { subsample: 0.5, trees: 20, seed: 9, ..BoostParams::default() };
        let a = BoostedClassifier::fit(&x, &y, &[1.0; 60], &p).unwrap();
        let b = BoostedClassifier::fit(&x, &y, &[1.0; 60], &p).unwrap();
        assert_eq!(a, b);
    }
}
