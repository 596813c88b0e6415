//! Classifier specifications, training and held-out evaluation.

use serde::{Deserialize, Serialize};

use super::boost::{BoostParams, BoostedClassifier, BoostedRegressor};
use super::linear::{LinearLoss, LinearModel};
use super::metrics::{f1_scores, regression_metrics, roc_auc, ConfusionMatrix, F1Scores, RegressionMetrics};
use super::{CvScores, MlError};
use crate::dataset::Dataset;

/// Decision threshold on the model score.
pub const THRESHOLD: f64 = 0.5;

/// How the percentage RMSE in regression reports is computed.
pub const PERCENTAGE_RMSE_DEFINITION: &str = "100 * rmse / mean(actual)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Logistic,
    LinearMargin,
    BoostedTrees,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Logistic, Family::LinearMargin, Family::BoostedTrees];

    pub fn name(self) -> &'static str {
        match self {
            Family::Logistic => "logistic",
            Family::LinearMargin => "linear_margin",
            Family::BoostedTrees => "boosted_trees",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown model family `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum ClassWeighting {
    #[default]
    None,
    /// Inverse class frequency, `n / (2 n_c)`.
    Balanced,
    Custom { not_hard: f64, hard: f64 },
}

impl ClassWeighting {
    pub fn sample_weights(&self, labels: &[bool]) -> Vec<f64> {
        let pos = labels.iter().filter(|&&l| l).count();
        let neg = labels.len() - pos;
        let (wn, wp) = match *self {
            ClassWeighting::None => (1.0, 1.0),
            ClassWeighting::Balanced => {
                let n = labels.len() as f64;
                (n / (2.0 * neg.max(1) as f64), n / (2.0 * pos.max(1) as f64))
            }
            ClassWeighting::Custom { not_hard, hard } => (not_hard, hard),
        };
        labels.iter().map(|&l| if l { wp } else { wn }).collect()
    }
}

/// Fields unused by a family are ignored: linear models read `l2`,
/// `learning_rate` and `epochs`; boosted trees read the rest plus
/// `learning_rate`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Hyperparameters {
    pub l2: f64,
    pub learning_rate: f64,
    pub epochs: usize,
    pub trees: usize,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub subsample: f64,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        let b = BoostParams::default();
        Hyperparameters {
            l2: 1e-3,
            learning_rate: 0.5,
            epochs: 500,
            trees: b.trees,
            max_depth: b.max_depth,
            min_samples_leaf: b.min_samples_leaf,
            subsample: b.subsample,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierSpec {
    pub family: Family,
    pub hyperparameters: Hyperparameters,
    pub class_weighting: ClassWeighting,
    pub seed: u64,
}

impl ClassifierSpec {
    pub fn new(family: Family, hyperparameters: Hyperparameters) -> Self {
        ClassifierSpec {
            family,
            hyperparameters,
            class_weighting: ClassWeighting::None,
            seed: 0,
        }
    }

    pub fn logistic(l2: f64, learning_rate: f64, epochs: usize) -> Self {
        Self::linear(Family::Logistic, l2, learning_rate, epochs)
    }

    pub fn linear_margin(l2: f64, learning_rate: f64, epochs: usize) -> Self {
        Self::linear(Family::LinearMargin, l2, learning_rate, epochs)
    }

    fn linear(family: Family, l2: f64, learning_rate: f64, epochs: usize) -> Self {
        Self::new(
            family,
            Hyperparameters {
                l2,
                learning_rate,
                epochs,
                ..Hyperparameters::default()
            },
        )
    }

    pub fn boosted(trees: usize, max_depth: usize, learning_rate: f64) -> Self {
        Self::new(
            Family::BoostedTrees,
            Hyperparameters {
                trees,
                max_depth,
                learning_rate,
                ..Hyperparameters::default()
            },
        )
    }

    pub fn with_weighting(mut self, w: ClassWeighting) -> Self {
        self.class_weighting = w;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), MlError> {
        let h = &self.hyperparameters;
        let bad = |what: &str| Err(MlError::InvalidSpec(format!("{}: {what}", self.family)));
        if !(h.learning_rate > 0.0 && h.learning_rate.is_finite()) {
            return bad("learning_rate must be positive");
        }
        if !(h.l2 >= 0.0 && h.l2.is_finite()) {
            return bad("l2 must be non-negative");
        }
        if self.family == Family::BoostedTrees {
            if h.max_depth == 0 {
                return bad("max_depth must be positive");
            }
            if h.min_samples_leaf == 0 {
                return bad("min_samples_leaf must be positive");
            }
            if !(h.subsample > 0.0 && h.subsample <= 1.0) {
                return bad("subsample must be in (0, 1]");
            }
        }
        if let ClassWeighting::Custom { not_hard, hard } = self.class_weighting {
            if !(not_hard > 0.0 && hard > 0.0 && not_hard.is_finite() && hard.is_finite()) {
                return bad("class weights must be positive");
            }
        }
        Ok(())
    }

    pub(crate) fn boost_params(&self) -> BoostParams {
        let h = &self.hyperparameters;
        BoostParams {
            trees: h.trees,
            learning_rate: h.learning_rate,
            max_depth: h.max_depth,
            min_samples_leaf: h.min_samples_leaf,
            subsample: h.subsample,
            leaf_l2: BoostParams::default().leaf_l2,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fitted {
    Linear(LinearModel),
    Boosted(BoostedClassifier),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub spec: ClassifierSpec,
    pub fitted: Fitted,
}

impl TrainedModel {
    /// Probability-like score in [0, 1].
    pub fn score(&self, row: &[f64]) -> f64 {
        match &self.fitted {
            Fitted::Linear(m) => m.score(row),
            Fitted::Boosted(m) => m.score(row),
        }
    }

    pub fn predict(&self, row: &[f64]) -> bool {
        self.score(row) > THRESHOLD
    }
}

/// Trains on already-scaled rows.
pub fn fit_classifier(spec: &ClassifierSpec, x: &[Vec<f64>], y: &[bool]) -> Result<TrainedModel, MlError> {
    spec.validate()?;
    if x.is_empty() {
        return Err(MlError::EmptyTraining);
    }
    if x.len() != y.len() {
        return Err(MlError::Shape(format!("{} rows but {} labels", x.len(), y.len())));
    }
    if y.iter().all(|&l| l) || y.iter().all(|&l| !l) {
        return Err(MlError::SingleClass);
    }
    let sw = spec.class_weighting.sample_weights(y);
    let h = &spec.hyperparameters;
    let fitted = match spec.family {
        Family::Logistic | Family::LinearMargin => {
            let loss = if spec.family == Family::Logistic {
                LinearLoss::Logistic
            } else {
                LinearLoss::Hinge
            };
            Fitted::Linear(LinearModel::fit(loss, x, y, &sw, h.l2, h.learning_rate, h.epochs)?)
        }
        Family::BoostedTrees => Fitted::Boosted(BoostedClassifier::fit(x, y, &sw, &spec.boost_params())?),
    };
    Ok(TrainedModel { spec: *spec, fitted })
}

/// Trains on a dataset whose features are already scaled.
pub fn train_classifier(spec: &ClassifierSpec, train: &Dataset) -> Result<TrainedModel, MlError> {
    fit_classifier(spec, &train.features, &train.labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub confusion: ConfusionMatrix,
    pub f1: F1Scores,
    /// Absent when the evaluated sample holds a single class.
    pub roc_auc: Option<f64>,
}

pub fn evaluate_rows(model: &TrainedModel, x: &[Vec<f64>], y: &[bool]) -> Evaluation {
    let scores: Vec<f64> = x.iter().map(|r| model.score(r)).collect();
    let predicted: Vec<bool> = scores.iter().map(|&s| s > THRESHOLD).collect();
    let confusion = ConfusionMatrix::from_predictions(y, &predicted);
    Evaluation {
        confusion,
        f1: f1_scores(&confusion),
        roc_auc: roc_auc(&scores, y).ok(),
    }
}

pub fn evaluate_classifier(model: &TrainedModel, test: &Dataset) -> Evaluation {
    evaluate_rows(model, &test.features, &test.labels)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub spec: ClassifierSpec,
    pub confusion: ConfusionMatrix,
    pub f1: F1Scores,
    pub roc_auc: Option<f64>,
    pub cv: Option<CvScores>,
    pub selected_features: Vec<String>,
}

impl ModelReport {
    pub fn new(spec: ClassifierSpec, eval: Evaluation, cv: Option<CvScores>, selected_features: Vec<String>) -> Self {
        ModelReport {
            spec,
            confusion: eval.confusion,
            f1: eval.f1,
            roc_auc: eval.roc_auc,
            cv,
            selected_features,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub target: String,
    pub params: BoostParams,
    /// `"log"` when the model was fitted to `ln(target)`; metrics are
    /// always reported in the original units.
    pub space: String,
    pub metrics: RegressionMetrics<f64>,
    pub percentage_rmse_definition: String,
    pub selected_features: Vec<String>,
    pub n_train: usize,
    pub n_test: usize,
}

/// Fits a boosted regressor to `target` (optionally in log space) and
/// reports held-out metrics in the original units.
pub fn fit_and_evaluate_regressor(
    params: &BoostParams,
    train_x: &[Vec<f64>],
    train_y: &[f64],
    test_x: &[Vec<f64>],
    test_y: &[f64],
    log_target: bool,
) -> Result<(BoostedRegressor, RegressionMetrics<f64>), MlError> {
    if log_target && train_y.iter().chain(test_y).any(|&v| v <= 0.0) {
        return Err(MlError::NonFiniteTarget);
    }
    let y: Vec<f64> = if log_target {
        train_y.iter().map(|v| v.ln()).collect()
    } else {
        train_y.to_vec()
    };
    let model = BoostedRegressor::fit(train_x, &y, params)?;
    let pred: Vec<f64> = test_x
        .iter()
        .map(|r| {
            let p = model.predict(r);
            if log_target {
                p.exp()
            } else {
                p
            }
        })
        .collect();
    Ok((model, regression_metrics(&pred, test_y)?))
}
