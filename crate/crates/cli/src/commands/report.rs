use std::fmt::Write as _;

use serde_json::Value;

use super::Written;
use crate::config::PipelineConfig;
use crate::error::CliError;
use crate::output::{fingerprint_comment, read_text, write_output};

fn load_json(cfg: &PipelineConfig, name: &str) -> Result<Option<Value>, CliError> {
    let path = cfg.out.join(name);
    if !path.exists() {
        return Ok(None);
    }
    serde_json::from_str(&read_text(&path)?)
        .map(Some)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn num(v: &Value) -> String {
    v.as_f64().map_or_else(|| "n/a".into(), |x| format!("{x:.4}"))
}

/// Summarizes whichever stage outputs exist in the output directory into
/// `report.txt`.
pub fn cmd_report(cfg: &PipelineConfig) -> Result<Written, CliError> {
    let mut text = format!("# {}\n", fingerprint_comment(cfg));
    let mut sections = 0;

    if let Some(models) = load_json(cfg, "model_reports.json")? {
        sections += 1;
        let _ = writeln!(
            text,
            "\n== hardness classifiers (train {}, test {}) ==",
            models["n_train"], models["n_test"]
        );
        for f in models["families"].as_array().into_iter().flatten() {
            let r = &f["report"];
            let c = &r["confusion"];
            let _ = writeln!(
                text,
                "{:<14} cv weighted F1 {}  test weighted F1 {}  minority F1 {}  ROC-AUC {}  [tn {} fp {} fn {} tp {}]",
                f["family"].as_str().unwrap_or("?"),
                num(&r["cv"]["weighted_f1"]["mean"]),
                num(&r["f1"]["weighted"]),
                num(&r["f1"]["hard"]),
                num(&r["roc_auc"]),
                c["tn"],
                c["fp"],
                c["fn"],
                c["tp"]
            );
        }
        let _ = writeln!(text, "best family: {}", models["best_family"].as_str().unwrap_or("?"));
        let _ = writeln!(text, "forward selection:");
        for s in models["selection"]["steps"].as_array().into_iter().flatten() {
            let _ = writeln!(
                text,
                "  {:>2}. {:<40} weighted F1 {}  ROC-AUC {}",
                s["n_features"],
                s["added"].as_str().unwrap_or("?"),
                num(&s["weighted_f1"]),
                num(&s["roc_auc"])
            );
        }
    }

    let rules_path = cfg.out.join("rules.csv");
    if rules_path.exists() {
        sections += 1;
        let rules = read_text(&rules_path)?;
        let mut lines = rules.lines().filter(|l| !l.starts_with('#'));
        let header = lines.next().unwrap_or_default();
        let _ = writeln!(text, "\n== top rules (full-corpus evaluation) ==\n{header}");
        for l in lines.take(5) {
            let _ = writeln!(text, "{l}");
        }
    }

    if let Some(rt) = load_json(cfg, "runtime_reports.json")? {
        sections += 1;
        let _ = writeln!(text, "\n== runtime regressors ==");
        for r in rt["reports"].as_array().into_iter().flatten() {
            let m = &r["metrics"];
            let _ = writeln!(
                text,
                "{:<14} rmse {}  %rmse {}  r2 {}  ({} space)",
                r["target"].as_str().unwrap_or("?"),
                num(&m["rmse"]),
                num(&m["percentage_rmse"]),
                num(&m["r2"]),
                r["space"].as_str().unwrap_or("?")
            );
        }
    }

    if sections == 0 {
        return Err(CliError::Data(format!(
            "{}: no stage outputs to report on",
            cfg.out.display()
        )));
    }
    print!("{text}");
    Ok(vec![write_output(cfg, "report.txt", &text)?])
}
