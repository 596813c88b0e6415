mod common;

use std::fs;
use std::process::Command;

use common::*;
use graphhard_cli::commands::{cmd_features, cmd_label, cmd_mine, cmd_report, cmd_runtime, cmd_train};
use graphhard_cli::config::PipelineConfig;
use graphhard_cli::CliError;
use graphhard_core::features::FEATURE_NAMES;
use tempfile::tempdir;

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

/// Small training config: a short boosted grid and a two-step selection.
fn quick_train(cfg: &mut PipelineConfig) {
    cfg.train.boosted_trees.trees = vec![20];
    cfg.train.max_features = 2;
    cfg.split.folds = 3;
}

#[test]
fn features_of_small_graphs() {
    let dir = tempdir().unwrap();
    let cfg = config(dir.path());
    write_graph(&cfg.corpus.path, "k3.txt", &complete(3));
    write_graph(&cfg.corpus.path, "p3.txt", &path(3));
    write_graph(&cfg.corpus.path, "star3.txt", &star(3));
    cmd_features(&cfg).unwrap();

    let (header, rows) = csv_rows(&cfg.out.join("features.csv"));
    assert_eq!(header.len(), FEATURE_NAMES.len() + 2);
    let ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ids, ["k3", "p3", "star3"]);
    let get = |row: usize, name: &str| rows[row][column(&header, name)].parse::<f64>().unwrap();
    assert_eq!(get(0, "density"), 1.0);
    assert_eq!(get(1, "diameter"), 2.0);
    assert_eq!(get(2, "num_edges"), 3.0);
    assert!((get(2, "spectral_radius") - 3f64.sqrt()).abs() < 1e-12);
    assert!((get(0, "laplacian_spectral_radius") - 3.0).abs() < 1e-12);
}

#[test]
fn empty_corpus_is_a_data_error() {
    let dir = tempdir().unwrap();
    let cfg = config(dir.path());
    fs::create_dir_all(&cfg.corpus.path).unwrap();
    let err = cmd_features(&cfg).unwrap_err();
    assert!(matches!(err, CliError::Data(_)), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn corrupt_files_are_logged_and_skipped() {
    let dir = tempdir().unwrap();
    let cfg = config(dir.path());
    write_graph(&cfg.corpus.path, "good.txt", &complete(4));
    fs::write(cfg.corpus.path.join("bad.txt"), "0 1\nnot an edge\n").unwrap();
    cmd_features(&cfg).unwrap();
    let (_, rows) = csv_rows(&cfg.out.join("features.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "good");
    let (_, diag) = csv_rows(&cfg.out.join("features_diagnostics.csv"));
    assert!(diag.iter().any(|d| d[0] == "bad" && d[2] == "error"), "{diag:?}");
}

#[test]
fn complete_graphs_are_not_hard_and_planted_graph_is_hard() {
    let dir = tempdir().unwrap();
    let cfg = config(dir.path());
    for n in 3..7 {
        write_graph(&cfg.corpus.path, &format!("k{n}.txt"), &complete(n));
    }
    write_graph(&cfg.corpus.path, "planted.txt", &planted_hard());
    cmd_label(&cfg).unwrap();

    let (header, rows) = csv_rows(&cfg.out.join("instances.csv"));
    let label = column(&header, "label");
    for row in &rows {
        let want = if row[0] == "planted" { "1" } else { "0" };
        assert_eq!(row[label], want, "{}", row[0]);
    }
    let (_, results) = csv_rows(&cfg.out.join("results.csv"));
    assert_eq!(results.len(), 5 * 3);
    let planted: Vec<&Vec<String>> = results.iter().filter(|r| r[0] == "planted").collect();
    assert_eq!(planted[0][2], "4");
    assert!(planted[1..].iter().all(|r| r[2] == "3"));
}

#[test]
fn timed_out_instances_are_excluded() {
    let dir = tempdir().unwrap();
    let mut cfg = config(dir.path());
    cfg.solvers.time_limit = 0.0;
    write_graph(&cfg.corpus.path, "small.txt", &complete(5));
    write_graph(&cfg.corpus.path, "big.txt", &graphhard_testkit::generate::gnp(300, 0.9, 1));
    cmd_label(&cfg).unwrap();

    let (_, rows) = csv_rows(&cfg.out.join("instances.csv"));
    let ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ids, ["small"]);
    let (_, results) = csv_rows(&cfg.out.join("results.csv"));
    assert!(results.iter().any(|r| r[0] == "big" && r[5] == "true"));
    let (_, diag) = csv_rows(&cfg.out.join("label_diagnostics.csv"));
    assert!(diag.iter().any(|d| d[0] == "big" && d[2] == "unresolved"));
}

#[test]
fn train_reports_every_family() {
    let dir = tempdir().unwrap();
    let mut cfg = config(dir.path());
    quick_train(&mut cfg);
    cfg.train.dataset = Some(write_planted_dataset(dir.path(), 600, 3));
    cmd_train(&cfg).unwrap();

    let report = json(&cfg.out.join("model_reports.json"));
    let families: Vec<&str> = report["families"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["family"].as_str().unwrap())
        .collect();
    assert_eq!(families, ["logistic", "linear_margin", "boosted_trees"]);
    assert!(report["config_fingerprint"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(report["selection"]["steps"].as_array().unwrap().len(), 2);
    let (header, rows) = csv_rows(&cfg.out.join("feature_selection.csv"));
    assert_eq!(header, ["n_features", "added", "weighted_f1", "minority_f1", "roc_auc"]);
    assert_eq!(rows.len(), 2);
}

#[test]
fn train_with_one_class_is_a_data_error() {
    let dir = tempdir().unwrap();
    let mut cfg = config(dir.path());
    cfg.train.dataset = Some(write_runtime_dataset(dir.path(), 50, 1));
    assert!(matches!(cmd_train(&cfg), Err(CliError::Data(_))));
}

#[test]
fn mining_at_full_support_keeps_only_universal_antecedents() {
    let dir = tempdir().unwrap();
    let mut cfg = config(dir.path());
    // f0 puts both hard rows in Q4; f1 splits them.
    let rows = (0..8).map(|i| vec![i as f64, (i % 2) as f64]).collect();
    let labels = (0..8).map(|i| i >= 6).collect();
    let d = graphhard_core::dataset::Dataset::from_rows(rows, labels).unwrap();
    cfg.mine.dataset = Some(write_csv(dir.path(), "tiny.csv", &d));
    cfg.mine.min_support = 1.0;
    cfg.mine.antecedent_floor = 1.0;
    cmd_mine(&cfg).unwrap();
    let (header, rows) = csv_rows(&cfg.out.join("rules.csv"));
    let support = column(&header, "support");
    let coverage = column(&header, "hard_coverage");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "f0∈Q4");
    for r in &rows {
        assert_eq!(r[support], "1.000000");
        assert_eq!(r[coverage], "1.000000");
    }
    let text = fs::read_to_string(cfg.out.join("transactions.txt")).unwrap();
    assert!(text.starts_with("# config-fingerprint: sha256:"));
}

#[test]
fn runtime_log_flag_switches_space() {
    let dir = tempdir().unwrap();
    let mut cfg = config(dir.path());
    cfg.runtime.dataset = Some(write_runtime_dataset(dir.path(), 200, 2));
    cfg.runtime.trees = 30;
    for (log_target, space) in [(false, "linear"), (true, "log")] {
        cfg.runtime.log_target = log_target;
        cmd_runtime(&cfg).unwrap();
        let report = json(&cfg.out.join("runtime_reports.json"));
        let r = &report["reports"][0];
        assert_eq!(r["space"], space);
        assert_eq!(r["target"], "synthetic");
        assert_eq!(r["n_train"].as_u64().unwrap() + r["n_test"].as_u64().unwrap(), 200);
    }
}

#[test]
fn report_needs_some_output() {
    let dir = tempdir().unwrap();
    let cfg = config(dir.path());
    assert!(matches!(cmd_report(&cfg), Err(CliError::Data(_))));
}

#[test]
fn stages_rerun_byte_identically() {
    let dir = tempdir().unwrap();
    let data = write_planted_dataset(dir.path(), 400, 5);
    let runtimes = write_runtime_dataset(dir.path(), 120, 5);
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let mut cfg = config(dir.path());
        cfg.out = dir.path().join(run);
        quick_train(&mut cfg);
        cfg.train.dataset = Some(data.clone());
        cfg.mine.dataset = Some(data.clone());
        cfg.runtime.dataset = Some(runtimes.clone());
        cfg.runtime.trees = 20;
        write_graph(&cfg.corpus.path, "k5.txt", &complete(5));
        write_graph(&cfg.corpus.path, "planted.txt", &planted_hard());
        write_graph(&cfg.corpus.path, "p6.txt", &path(6));
        cmd_features(&cfg).unwrap();
        cmd_label(&cfg).unwrap();
        cmd_train(&cfg).unwrap();
        cmd_mine(&cfg).unwrap();
        cmd_runtime(&cfg).unwrap();
        cmd_report(&cfg).unwrap();
        outputs.push(snapshot(&cfg.out));
    }
    assert_eq!(outputs[0].len(), 12);
    assert_eq!(outputs[0], outputs[1]);
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graphhard"))
}

#[test]
fn binary_exit_codes() {
    let dir = tempdir().unwrap();
    let status = |c: &mut Command| c.output().unwrap().status.code().unwrap();

    assert_eq!(status(binary().arg("--bogus")), 1);
    assert_eq!(status(binary().arg("--help")), 0);

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[split]\ntest_fraction = 2.0\n").unwrap();
    assert_eq!(status(binary().args(["features", "--config"]).arg(&bad)), 1);

    let missing = dir.path().join("missing.toml");
    fs::write(&missing, format!("[corpus]\npath = {:?}\n", dir.path().join("nowhere"))).unwrap();
    assert_eq!(status(binary().args(["features", "--config"]).arg(&missing)), 2);

    let cfg = config(dir.path());
    write_graph(&cfg.corpus.path, "k4.txt", &complete(4));
    let good = dir.path().join("good.toml");
    fs::write(&good, cfg.to_toml()).unwrap();
    let out = binary().args(["features", "--jobs", "1", "--config"]).arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(cfg.out.join("features.csv").exists());
}

#[test]
fn printed_defaults_parse_back() {
    let out = binary().args(["config", "--print-defaults"]).output().unwrap();
    assert!(out.status.success());
    let parsed = PipelineConfig::from_toml(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(parsed, PipelineConfig::default());
}
