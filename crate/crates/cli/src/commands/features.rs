use graphhard_core::dataset::write_features;
use graphhard_core::features::extract_features;
use rayon::prelude::*;

use super::{diagnostic, Diagnostic, Written, DIAGNOSTIC_COLUMNS};
use crate::config::PipelineConfig;
use crate::corpus::load_corpus;
use crate::error::CliError;
use crate::output::{csv_options, csv_table, write_output};

/// Writes `features.csv` (one row per graph) and `features_diagnostics.csv`.
/// Graphs that fail to parse or featurize are logged and skipped.
pub fn cmd_features(cfg: &PipelineConfig) -> Result<Written, CliError> {
    let corpus = load_corpus(&cfg.corpus)?;
    let tol = cfg.features.zero_tol;
    let results: Vec<_> = corpus
        .graphs
        .par_iter()
        .map(|g| extract_features::<f64>(&g.graph, tol))
        .collect();

    let mut diagnostics: Vec<Diagnostic> = corpus
        .failures
        .iter()
        .map(|(id, msg)| diagnostic(id, "parse", "error", msg.clone()))
        .collect();
    let mut rows = Vec::new();
    for (g, r) in corpus.graphs.iter().zip(results) {
        diagnostics.extend(g.warnings.iter().map(|w| diagnostic(&g.id, "parse", "warning", w.clone())));
        match r {
            Ok(f) => {
                if f.used_largest_component {
                    diagnostics.push(diagnostic(
                        &g.id,
                        "features",
                        "warning",
                        "disconnected; distance and spectral features use the largest component",
                    ));
                }
                rows.push((g.id.clone(), f));
            }
            Err(e) => diagnostics.push(diagnostic(&g.id, "features", "error", e.to_string())),
        }
    }
    for d in diagnostics.iter().filter(|d| d[2] == "error") {
        log::warn!("{}: {}", d[0], d[3]);
    }
    let diag_rows: Vec<Vec<String>> = diagnostics.into_iter().map(Vec::from).collect();
    let diag = write_output(cfg, "features_diagnostics.csv", &csv_table(cfg, &DIAGNOSTIC_COLUMNS, &diag_rows))?;
    if rows.is_empty() {
        return Err(CliError::Data(format!(
            "no graph in {} could be featurized (see {})",
            cfg.corpus.path.display(),
            diag.display()
        )));
    }
    let csv = write_features(&rows, &csv_options(cfg))?;
    Ok(vec![write_output(cfg, "features.csv", &csv)?, diag])
}
