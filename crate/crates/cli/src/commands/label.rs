use graphhard_core::dataset::{write_dataset, write_results, Dataset};
use graphhard_core::solvers::run_portfolio;
use rayon::prelude::*;

use super::{diagnostic, Written, DIAGNOSTIC_COLUMNS};
use crate::config::PipelineConfig;
use crate::corpus::load_corpus;
use crate::error::CliError;
use crate::output::{csv_options, csv_table, write_output};

/// Runs the solver portfolio on every graph and writes `instances.csv`
/// (resolved instances: features, label, runtimes), `results.csv` (one row
/// per instance and solver) and `label_diagnostics.csv`. Instances whose
/// exact solve timed out are unresolved and left out of `instances.csv`.
pub fn cmd_label(cfg: &PipelineConfig) -> Result<Written, CliError> {
    let corpus = load_corpus(&cfg.corpus)?;
    let portfolio = cfg.portfolio();
    let outcomes: Vec<_> = corpus
        .graphs
        .par_iter()
        .map(|g| run_portfolio(&g.id, &g.graph, &portfolio))
        .collect();

    let mut diagnostics: Vec<Vec<String>> = corpus
        .failures
        .iter()
        .map(|(id, msg)| diagnostic(id, "parse", "error", msg.clone()).into())
        .collect();
    let mut records = Vec::new();
    for (g, outcome) in corpus.graphs.iter().zip(outcomes) {
        match outcome {
            Ok(rec) => {
                if !rec.is_resolved() {
                    log::warn!("{}: unresolved, excluded", g.id);
                    diagnostics.push(
                        diagnostic(
                            &g.id,
                            "label",
                            "unresolved",
                            format!("exact solver hit the {} s limit; excluded", cfg.solvers.time_limit),
                        )
                        .into(),
                    );
                }
                records.push(rec);
            }
            Err(e) => {
                let err = CliError::from(e);
                if let CliError::Internal(_) = err {
                    return Err(err);
                }
                log::warn!("{}: {err}", g.id);
                diagnostics.push(diagnostic(&g.id, "label", "error", err.to_string()).into());
            }
        }
    }
    let mut written = vec![write_output(
        cfg,
        "label_diagnostics.csv",
        &csv_table(cfg, &DIAGNOSTIC_COLUMNS, &diagnostics),
    )?];
    if records.is_empty() {
        return Err(CliError::Data("no instance could be labeled".into()));
    }
    written.push(write_output(cfg, "results.csv", &write_results(&records, &csv_options(cfg))?)?);
    if !records.iter().any(|r| r.is_resolved()) {
        return Err(CliError::Data("every instance is unresolved".into()));
    }
    let dataset = Dataset::from_records(&records)?;
    written.insert(0, write_output(cfg, "instances.csv", &write_dataset(&dataset, &csv_options(cfg))?)?);
    Ok(written)
}
