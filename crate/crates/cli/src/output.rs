//! Writing stage outputs with provenance.

use std::fs;
use std::path::{Path, PathBuf};

use graphhard_core::dataset::CsvOptions;
use serde::Serialize;

use crate::config::PipelineConfig;
use crate::error::CliError;

pub const FINGERPRINT_KEY: &str = "config-fingerprint";

pub fn fingerprint_comment(cfg: &PipelineConfig) -> String {
    format!("{FINGERPRINT_KEY}: {}", cfg.fingerprint())
}

pub fn csv_options(cfg: &PipelineConfig) -> CsvOptions {
    CsvOptions::with_comment(fingerprint_comment(cfg))
}

/// Creates the output directory and writes `name` into it.
pub fn write_output(cfg: &PipelineConfig, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(&cfg.out).map_err(CliError::io(&cfg.out))?;
    let path = cfg.out.join(name);
    fs::write(&path, contents).map_err(CliError::io(&path))?;
    log::info!("wrote {}", path.display());
    Ok(path)
}

/// Pretty JSON of `value` (a struct) with a leading `config_fingerprint` field.
pub fn json_with_fingerprint<T: Serialize>(cfg: &PipelineConfig, value: &T) -> String {
    #[derive(Serialize)]
    struct Wrapped<'a, T> {
        config_fingerprint: String,
        #[serde(flatten)]
        body: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Wrapped {
        config_fingerprint: cfg.fingerprint(),
        body: value,
    })
    .expect("report serializes");
    s.push('\n');
    s
}

/// CSV text (with the fingerprint comment) for string rows.
pub fn csv_table(cfg: &PipelineConfig, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    format!("# {}\n{body}", fingerprint_comment(cfg))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(CliError::io(path))
}
