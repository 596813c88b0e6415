use graphhard_core::dataset::{minmax_scale, stratified_split_indices};
use graphhard_core::ml::{
    evaluate_classifier, forward_feature_selection, grid_search, selection_table, train_classifier, ClassifierSpec,
    CvScores, Family, ModelReport, SelectionStep,
};
use serde::Serialize;

use super::{load_dataset, Written};
use crate::config::PipelineConfig;
use crate::error::CliError;
use crate::output::{fingerprint_comment, json_with_fingerprint, write_output};

#[derive(Debug, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub best_index: usize,
    /// Cross-validation scores of every grid point, in grid order.
    pub grid: Vec<GridPoint>,
    /// The best grid point refitted on the full training part and scored
    /// on the held-out part.
    pub report: ModelReport,
}

#[derive(Debug, Serialize)]
pub struct GridPoint {
    pub spec: ClassifierSpec,
    pub cv: CvScores,
}

#[derive(Debug, Serialize)]
pub struct SelectionReport {
    pub spec: ClassifierSpec,
    pub steps: Vec<SelectionStep>,
}

#[derive(Debug, Serialize)]
pub struct TrainReport {
    pub n_train: usize,
    pub n_test: usize,
    pub hard_train: usize,
    pub hard_test: usize,
    pub folds: usize,
    pub families: Vec<FamilyReport>,
    /// Family whose best grid point has the highest mean CV weighted F1.
    pub best_family: Family,
    pub selection: SelectionReport,
}

/// Grid search per family on the training part, held-out evaluation of
/// each family's winner, and a forward-selection trajectory. Writes
/// `model_reports.json` and `feature_selection.csv`.
pub fn cmd_train(cfg: &PipelineConfig) -> Result<Written, CliError> {
    let path = cfg.dataset_path(&cfg.train.dataset);
    let d = load_dataset(&path)?;
    let (not_hard, hard) = d.class_counts();
    if hard == 0 || not_hard == 0 {
        return Err(CliError::Data(format!("{}: training needs both classes", path.display())));
    }
    let (train_idx, test_idx) = stratified_split_indices(&d.labels, cfg.split.test_fraction, cfg.seed)?;
    let train = d.subset(&train_idx);
    let test = d.subset(&test_idx);
    let (train_scaled, test_scaled, _) = minmax_scale(&train, &test);
    let folds = cfg.split.folds;

    let mut families = Vec::new();
    for &family in &cfg.train.families {
        let grid = cfg.train.grid(family, cfg.seed);
        let result = grid_search(&grid, &train, folds, cfg.seed)?;
        let model = train_classifier(&result.best, &train_scaled)?;
        let eval = evaluate_classifier(&model, &test_scaled);
        log::info!(
            "{family}: cv weighted F1 {:.4}, held-out weighted F1 {:.4}",
            result.scores[result.best_index].weighted_f1.mean,
            eval.f1.weighted
        );
        families.push(FamilyReport {
            family,
            best_index: result.best_index,
            report: ModelReport::new(
                result.best,
                eval,
                Some(result.scores[result.best_index].clone()),
                d.feature_names.clone(),
            ),
            grid: grid.into_iter().zip(result.scores).map(|(spec, cv)| GridPoint { spec, cv }).collect(),
        });
    }
    let cv_mean = |f: &FamilyReport| f.report.cv.as_ref().map_or(f64::NEG_INFINITY, |c| c.weighted_f1.mean);
    let mut best = 0;
    for (i, f) in families.iter().enumerate() {
        if cv_mean(f) > cv_mean(&families[best]) {
            best = i;
        }
    }

    let base = families
        .iter()
        .find(|f| f.family == cfg.train.selection_family)
        .map(|f| f.report.spec)
        .unwrap_or_else(|| cfg.train.grid(cfg.train.selection_family, cfg.seed)[0]);
    let selection_spec = base.with_weighting(cfg.train.selection_weighting.0);
    let steps = forward_feature_selection(
        &selection_spec,
        &train,
        folds,
        cfg.seed,
        cfg.train.max_features.min(train.width()),
    )?;

    let report = TrainReport {
        n_train: train.len(),
        n_test: test.len(),
        hard_train: train.class_counts().1,
        hard_test: test.class_counts().1,
        folds,
        best_family: families[best].family,
        families,
        selection: SelectionReport {
            spec: selection_spec,
            steps,
        },
    };
    let table = format!("# {}\n{}", fingerprint_comment(cfg), selection_table(&report.selection.steps));
    Ok(vec![
        write_output(cfg, "model_reports.json", &json_with_fingerprint(cfg, &report))?,
        write_output(cfg, "feature_selection.csv", &table)?,
    ])
}
