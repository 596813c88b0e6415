//! Loading graph corpora from disk.

use std::fs;
use std::path::{Path, PathBuf};

use graphhard_core::graph::{parse_dimacs, parse_edge_list, parse_tudataset, Graph, Parsed};

use crate::config::{CorpusConfig, CorpusFormat};
use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub id: String,
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Parsed graphs in id order plus `(id, message)` for inputs that failed.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub graphs: Vec<CorpusGraph>,
    pub failures: Vec<(String, String)>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(CliError::io(path))
}

fn accept(id: String, p: Parsed) -> CorpusGraph {
    let mut warnings = p.diagnostics.warnings;
    if p.diagnostics.duplicate_edges > 0 {
        warnings.push(format!("{} duplicate edges ignored", p.diagnostics.duplicate_edges));
    }
    CorpusGraph {
        id,
        graph: p.graph,
        warnings,
    }
}

/// Regular, non-hidden files of `dir` sorted by name.
fn files_in(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(CliError::io(dir))?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .filter(|p| !p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with('.')))
        .collect();
    files.sort();
    Ok(files)
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn tudataset_name(dir: &Path, name: &str) -> Result<String, CliError> {
    if !name.is_empty() {
        return Ok(name.to_string());
    }
    let candidates: Vec<String> = files_in(dir)?
        .iter()
        .filter_map(|p| p.file_name()?.to_str()?.strip_suffix("_A.txt").map(String::from))
        .collect();
    match candidates.as_slice() {
        [one] => Ok(one.clone()),
        [] => Err(CliError::Data(format!("{}: no *_A.txt file", dir.display()))),
        _ => Err(CliError::Data(format!(
            "{}: several TU datasets ({}); set corpus.name",
            dir.display(),
            candidates.join(", ")
        ))),
    }
}

/// Reads every graph of the configured corpus. Files that fail to parse are
/// reported in `failures`; a missing path is an error.
pub fn load_corpus(cfg: &CorpusConfig) -> Result<Corpus, CliError> {
    let path = &cfg.path;
    if !path.exists() {
        return Err(CliError::Data(format!("corpus path {} does not exist", path.display())));
    }
    let mut corpus = Corpus::default();
    match cfg.format {
        CorpusFormat::Tudataset => {
            let dir = if path.is_dir() { path.as_path() } else { path.parent().unwrap_or(Path::new(".")) };
            let name = tudataset_name(dir, &cfg.name)?;
            let adjacency = read(&dir.join(format!("{name}_A.txt")))?;
            let indicator = read(&dir.join(format!("{name}_graph_indicator.txt")))?;
            let parsed = parse_tudataset(&adjacency, &indicator).map_err(|e| CliError::Data(format!("{name}: {e}")))?;
            let width = parsed.len().to_string().len();
            for (k, p) in parsed.into_iter().enumerate() {
                corpus.graphs.push(accept(format!("{name}_{:0width$}", k + 1), p));
            }
        }
        CorpusFormat::Edgelist | CorpusFormat::Dimacs => {
            let files = if path.is_dir() { files_in(path)? } else { vec![path.clone()] };
            for file in files {
                let id = stem(&file);
                let text = match fs::read_to_string(&file) {
                    Ok(t) => t,
                    Err(e) => {
                        corpus.failures.push((id, e.to_string()));
                        continue;
                    }
                };
                let parsed = if cfg.format == CorpusFormat::Dimacs {
                    parse_dimacs(&text)
                } else {
                    parse_edge_list(&text)
                };
                match parsed {
                    Ok(p) => corpus.graphs.push(accept(id, p)),
                    Err(e) => corpus.failures.push((id, e.to_string())),
                }
            }
        }
    }
    Ok(corpus)
}
