//! Hardness classifiers, runtime regressors and their evaluation.

mod boost;
mod cv;
mod linear;
mod metrics;
mod model;
mod tree;

use thiserror::Error;

use crate::dataset::DatasetError;

pub use boost::{BoostParams, BoostedClassifier, BoostedRegressor};
pub use cv::{cross_validate, forward_feature_selection, grid_search, selection_table, CvScores, GridResult, SelectionStep, Summary};
pub use linear::{LinearLoss, LinearModel};
pub use metrics::{f1_scores, regression_metrics, roc_auc, ConfusionMatrix, F1Scores, MetricError, RegressionMetrics};
pub use model::{
    evaluate_classifier, evaluate_rows, fit_and_evaluate_regressor, fit_classifier, train_classifier, ClassWeighting,
    ClassifierSpec, Evaluation, Family, Fitted, Hyperparameters, ModelReport, RegressionReport, TrainedModel,
    PERCENTAGE_RMSE_DEFINITION, THRESHOLD,
};
pub use tree::{Node, RegressionTree};

#[derive(Debug, Error)]
pub enum MlError {
    #[error("training set is empty")]
    EmptyTraining,
    #[error("training labels hold a single class")]
    SingleClass,
    #[error("training diverged at epoch {epoch} (loss {loss})")]
    Diverged { epoch: usize, loss: f64 },
    #[error("regression target is not finite (or not positive in log space)")]
    NonFiniteTarget,
    #[error("invalid classifier spec: {0}")]
    InvalidSpec(String),
    #[error("empty hyperparameter grid")]
    EmptyGrid,
    #[error("requested {requested} features but only {available} exist")]
    TooManyFeatures { requested: usize, available: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}
