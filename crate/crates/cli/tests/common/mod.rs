//! Fixtures shared by the stage tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use graphhard_cli::config::PipelineConfig;
use graphhard_core::dataset::{write_dataset, CsvOptions, Dataset};
use graphhard_core::solvers::Clock;
use graphhard_testkit::generate::{planted_corpus, runtime_corpus};

/// Column indices of the planted three-feature rule.
pub const PLANTED_HIGH: usize = 0;
pub const PLANTED_LOW: [usize; 2] = [18, 19];

/// Config rooted at `root`: corpus in `root/corpus`, outputs in `root/out`,
/// reproducible solver timings and one local-search restart.
pub fn config(root: &Path) -> PipelineConfig {
    let mut cfg = PipelineConfig {
        out: root.join("out"),
        ..PipelineConfig::default()
    };
    cfg.corpus.path = root.join("corpus");
    cfg.solvers.clock = Clock::Effort;
    cfg.solvers.repeats = 1;
    cfg.solvers.restarts = 1;
    cfg.solvers.time_limit = 10.0;
    cfg
}

pub fn write_graph(dir: &Path, name: &str, edges: &[(usize, usize)]) {
    fs::create_dir_all(dir).unwrap();
    let text: String = edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect();
    fs::write(dir.join(name), text).unwrap();
}

pub fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn path(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (v - 1, v)).collect()
}

pub fn star(leaves: usize) -> Vec<(usize, usize)> {
    (1..=leaves).map(|v| (0, v)).collect()
}

/// Complete 3-partite graph on 15 vertices (degree 10, ω = 3) plus a
/// disjoint K4 of degree-3 vertices: greedy is drawn into the dense part
/// and stops at 3 while ω = 4.
pub fn planted_hard() -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = complete(15)
        .into_iter()
        .filter(|&(u, v)| u % 3 != v % 3)
        .collect();
    edges.extend(complete(4).into_iter().map(|(u, v)| (u + 15, v + 15)));
    edges
}

/// Writes a labeled planted dataset of `n` rows and returns its path.
pub fn write_planted_dataset(dir: &Path, n: usize, seed: u64) -> PathBuf {
    let c = planted_corpus(n, 23, PLANTED_HIGH, PLANTED_LOW, 0.02, seed);
    let d = Dataset::from_rows(c.rows, c.labels).unwrap();
    write_csv(dir, "planted.csv", &d)
}

/// Writes an unlabeled dataset with one runtime column `synthetic`.
pub fn write_runtime_dataset(dir: &Path, n: usize, seed: u64) -> PathBuf {
    let (rows, target) = runtime_corpus(n, 23, [0, 5, 9], 0.05, seed);
    let mut d = Dataset::from_rows(rows, vec![false; n]).unwrap();
    d.runtimes.push(("synthetic".into(), target));
    write_csv(dir, "runtimes.csv", &d)
}

pub fn write_csv(dir: &Path, name: &str, d: &Dataset) -> PathBuf {
    fs::create_dir_all(dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, write_dataset(d, &CsvOptions::default()).unwrap()).unwrap();
    path
}

/// Every file in `dir` by name.
pub fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

/// CSV rows of an output file, skipping `#` comment lines and the header.
pub fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

pub fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}
