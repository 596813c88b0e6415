//! Cross-validation, grid search and greedy forward feature selection.

use serde::{Deserialize, Serialize};

use super::model::{evaluate_rows, fit_classifier, ClassifierSpec};
use super::MlError;
use crate::dataset::{stratified_kfold, Dataset, MinMaxScaler};
use crate::stats::{mean, std_dev};

/// Mean and population standard deviation over folds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub sd: f64,
}

impl Summary {
    fn of(values: &[f64]) -> Self {
        Summary {
            mean: mean(values).unwrap_or(0.0),
            sd: std_dev(values).unwrap_or(0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvScores {
    pub folds: usize,
    pub weighted_f1: Summary,
    pub minority_f1: Summary,
    /// Folds holding a single class are skipped; absent if all are.
    pub roc_auc: Option<Summary>,
}

fn take_rows(x: &[Vec<f64>], cols: &[usize], rows: &[usize]) -> Vec<Vec<f64>> {
    rows.iter().map(|&i| cols.iter().map(|&j| x[i][j]).collect()).collect()
}

/// k-fold CV on the columns `cols`; the scaler is refit on each training
/// part so no statistics leak from the held-out fold.
fn cross_validate_columns(
    spec: &ClassifierSpec,
    d: &Dataset,
    cols: &[usize],
    folds: &[Vec<usize>],
) -> Result<CvScores, MlError> {
    let mut wf1 = Vec::with_capacity(folds.len());
    let mut mf1 = Vec::with_capacity(folds.len());
    let mut auc = Vec::with_capacity(folds.len());
    let mut in_test = vec![false; d.len()];
    for fold in folds {
        in_test.iter_mut().for_each(|b| *b = false);
        for &i in fold {
            in_test[i] = true;
        }
        let train: Vec<usize> = (0..d.len()).filter(|&i| !in_test[i]).collect();
        let train_x = take_rows(&d.features, cols, &train);
        let scaler = MinMaxScaler::fit(&train_x);
        let train_x = scaler.transform(&train_x);
        let test_x = scaler.transform(&take_rows(&d.features, cols, fold));
        let train_y: Vec<bool> = train.iter().map(|&i| d.labels[i]).collect();
        let test_y: Vec<bool> = fold.iter().map(|&i| d.labels[i]).collect();
        let model = fit_classifier(spec, &train_x, &train_y)?;
        let e = evaluate_rows(&model, &test_x, &test_y);
        wf1.push(e.f1.weighted);
        mf1.push(e.f1.hard);
        auc.extend(e.roc_auc);
    }
    Ok(CvScores {
        folds: folds.len(),
        weighted_f1: Summary::of(&wf1),
        minority_f1: Summary::of(&mf1),
        roc_auc: (!auc.is_empty()).then(|| Summary::of(&auc)),
    })
}

pub fn cross_validate(spec: &ClassifierSpec, d: &Dataset, k: usize, seed: u64) -> Result<CvScores, MlError> {
    let folds = stratified_kfold(&d.labels, k, seed)?;
    let cols: Vec<usize> = (0..d.width()).collect();
    cross_validate_columns(spec, d, &cols, &folds)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub best_index: usize,
    pub best: ClassifierSpec,
    /// One entry per grid point, in grid order.
    pub scores: Vec<CvScores>,
}

/// Evaluates every spec on the same folds and keeps the highest mean
/// weighted F1; the earliest spec wins ties.
pub fn grid_search(grid: &[ClassifierSpec], d: &Dataset, k: usize, seed: u64) -> Result<GridResult, MlError> {
    if grid.is_empty() {
        return Err(MlError::EmptyGrid);
    }
    let folds = stratified_kfold(&d.labels, k, seed)?;
    let cols: Vec<usize> = (0..d.width()).collect();
    let scores = grid
        .iter()
        .map(|s| cross_validate_columns(s, d, &cols, &folds))
        .collect::<Result<Vec<_>, _>>()?;
    let mut best_index = 0;
    for (i, s) in scores.iter().enumerate() {
        if s.weighted_f1.mean > scores[best_index].weighted_f1.mean {
            best_index = i;
        }
    }
    Ok(GridResult {
        best_index,
        best: grid[best_index],
        scores,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionStep {
    pub n_features: usize,
    pub added: String,
    pub features: Vec<String>,
    pub weighted_f1: f64,
    pub minority_f1: f64,
    pub roc_auc: Option<f64>,
}

/// Greedy forward selection: each step adds the feature whose inclusion
/// gives the best CV mean weighted F1, breaking ties by mean ROC-AUC and
/// then by the lower column index.
pub fn forward_feature_selection(
    spec: &ClassifierSpec,
    d: &Dataset,
    k: usize,
    seed: u64,
    max_features: usize,
) -> Result<Vec<SelectionStep>, MlError> {
    if max_features > d.width() {
        return Err(MlError::TooManyFeatures {
            requested: max_features,
            available: d.width(),
        });
    }
    let folds = stratified_kfold(&d.labels, k, seed)?;
    let mut chosen: Vec<usize> = Vec::with_capacity(max_features);
    let mut steps = Vec::with_capacity(max_features);
    for _ in 0..max_features {
        let mut best: Option<(usize, CvScores)> = None;
        for j in (0..d.width()).filter(|j| !chosen.contains(j)) {
            let mut cols = chosen.clone();
            cols.push(j);
            let s = cross_validate_columns(spec, d, &cols, &folds)?;
            let better = match &best {
                None => true,
                Some((_, b)) => {
                    let auc = |c: &CvScores| c.roc_auc.map_or(f64::NEG_INFINITY, |a| a.mean);
                    s.weighted_f1.mean > b.weighted_f1.mean
                        || (s.weighted_f1.mean == b.weighted_f1.mean && auc(&s) > auc(b))
                }
            };
            if better {
                best = Some((j, s));
            }
        }
        let (j, s) = best.expect("max_features <= width leaves a candidate");
        chosen.push(j);
        steps.push(SelectionStep {
            n_features: chosen.len(),
            added: d.feature_names[j].clone(),
            features: chosen.iter().map(|&c| d.feature_names[c].clone()).collect(),
            weighted_f1: s.weighted_f1.mean,
            minority_f1: s.minority_f1.mean,
            roc_auc: s.roc_auc.map(|a| a.mean),
        });
    }
    Ok(steps)
}

/// The trajectory as CSV rows `n_features,added,weighted_f1,minority_f1,roc_auc`.
pub fn selection_table(steps: &[SelectionStep]) -> String {
    let mut out = String::from("n_features,added,weighted_f1,minority_f1,roc_auc\n");
    for s in steps {
        let auc = s.roc_auc.map_or(String::new(), |a| format!("{a:.6}"));
        out.push_str(&format!(
            "{},{},{:.6},{:.6},{}\n",
            s.n_features, s.added, s.weighted_f1, s.minority_f1, auc
        ));
    }
    out
}
