use graphhard_core::dataset::stratified_split_indices;
use graphhard_core::ml::{fit_and_evaluate_regressor, RegressionReport, PERCENTAGE_RMSE_DEFINITION};
use serde::Serialize;

use super::{load_dataset, Written};
use crate::config::PipelineConfig;
use crate::error::CliError;
use crate::output::{json_with_fingerprint, write_output};

#[derive(Debug, Serialize)]
struct RuntimeReports {
    evaluation: &'static str,
    reports: Vec<RegressionReport>,
}

/// Fits one boosted-tree regressor per solver runtime column and writes
/// held-out metrics to `runtime_reports.json`.
pub fn cmd_runtime(cfg: &PipelineConfig) -> Result<Written, CliError> {
    let path = cfg.dataset_path(&cfg.runtime.dataset);
    let d = load_dataset(&path)?;
    if d.runtimes.is_empty() {
        return Err(CliError::Data(format!("{}: no runtime_* columns", path.display())));
    }
    let solvers: Vec<String> = if cfg.runtime.solvers.is_empty() {
        d.runtimes.iter().map(|(s, _)| s.clone()).collect()
    } else {
        cfg.runtime.solvers.clone()
    };
    let (not_hard, hard) = d.class_counts();
    // Stratify by class when both classes can be split; otherwise any fixed
    // two-way labeling gives a seeded random split.
    let strata: Vec<bool> = if hard.min(not_hard) >= 2 {
        d.labels.clone()
    } else {
        (0..d.len()).map(|i| i % 2 == 0).collect()
    };
    let (train_idx, test_idx) = stratified_split_indices(&strata, cfg.split.test_fraction, cfg.seed)?;
    let rows = |idx: &[usize]| idx.iter().map(|&i| d.features[i].clone()).collect::<Vec<_>>();
    let (train_x, test_x) = (rows(&train_idx), rows(&test_idx));
    let params = cfg.runtime.boost_params(cfg.seed);

    let mut reports = Vec::new();
    for solver in &solvers {
        let y = d
            .runtime(solver)
            .ok_or_else(|| CliError::Data(format!("{}: no runtime column for {solver}", path.display())))?;
        let pick = |idx: &[usize]| idx.iter().map(|&i| y[i]).collect::<Vec<f64>>();
        let (_, metrics) = fit_and_evaluate_regressor(
            &params,
            &train_x,
            &pick(&train_idx),
            &test_x,
            &pick(&test_idx),
            cfg.runtime.log_target,
        )
        .map_err(|e| CliError::Data(format!("{solver}: {e}")))?;
        if metrics.r2.is_none() {
            log::warn!("{solver}: held-out runtimes are constant; r2 undefined");
        }
        reports.push(RegressionReport {
            target: solver.clone(),
            params,
            space: if cfg.runtime.log_target { "log" } else { "linear" }.into(),
            metrics,
            percentage_rmse_definition: PERCENTAGE_RMSE_DEFINITION.into(),
            selected_features: d.feature_names.clone(),
            n_train: train_idx.len(),
            n_test: test_idx.len(),
        });
    }
    let out = RuntimeReports {
        evaluation: "held-out split",
        reports,
    };
    Ok(vec![write_output(cfg, "runtime_reports.json", &json_with_fingerprint(cfg, &out))?])
}
