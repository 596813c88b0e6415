//! CSV persistence for feature tables, labeled datasets and solver results.
//!
//! Every file starts with optional `#` comment lines (provenance), then a
//! header row. Floats are written in shortest round-trip form.

use crate::features::{FeatureVector, FEATURE_NAMES};
use crate::solvers::InstanceRecord;

use super::{Dataset, DatasetError};

const RUNTIME_PREFIX: &str = "runtime_";
const RESERVED: [&str; 4] = ["id", "label", "used_largest_component", "reference_size"];

/// Leading comment lines written before the header.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CsvOptions {
    pub comments: Vec<String>,
}

impl CsvOptions {
    pub fn with_comment(comment: impl Into<String>) -> Self {
        CsvOptions {
            comments: vec![comment.into()],
        }
    }
}

fn finish(options: &CsvOptions, rows: Vec<Vec<String>>) -> Result<String, DatasetError> {
    let mut out = String::new();
    for c in &options.comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| DatasetError::Csv(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).expect("utf-8 csv"));
    Ok(out)
}

fn num(v: f64) -> String {
    format!("{v}")
}

/// Feature table: `id`, the 23 features, `used_largest_component`.
pub fn write_features(
    rows: &[(String, FeatureVector<f64>)],
    options: &CsvOptions,
) -> Result<String, DatasetError> {
    let mut out = Vec::with_capacity(rows.len() + 1);
    let mut header = vec!["id".to_string()];
    header.extend(FEATURE_NAMES.iter().map(|s| s.to_string()));
    header.push("used_largest_component".into());
    out.push(header);
    for (id, f) in rows {
        let mut r = vec![id.clone()];
        r.extend(f.values().iter().map(|&v| num(v)));
        r.push(f.used_largest_component.to_string());
        out.push(r);
    }
    finish(options, out)
}

/// Labeled dataset: `id`, features, `label` (1 = hard), `runtime_<solver>` columns.
pub fn write_dataset(d: &Dataset, options: &CsvOptions) -> Result<String, DatasetError> {
    let mut rows = Vec::with_capacity(d.len() + 1);
    let mut header = vec!["id".to_string()];
    header.extend(d.feature_names.iter().cloned());
    header.push("label".into());
    header.extend(d.runtimes.iter().map(|(s, _)| format!("{RUNTIME_PREFIX}{s}")));
    rows.push(header);
    for i in 0..d.len() {
        let mut r = vec![d.ids[i].clone()];
        r.extend(d.features[i].iter().map(|&v| num(v)));
        r.push(if d.labels[i] { "1" } else { "0" }.into());
        r.extend(d.runtimes.iter().map(|(_, v)| num(v[i])));
        rows.push(r);
    }
    finish(options, rows)
}

/// Per-(instance, solver) results: id, solver, clique size, proven_optimal,
/// elapsed (the recorded runtime), timed_out.
pub fn write_results(records: &[InstanceRecord], options: &CsvOptions) -> Result<String, DatasetError> {
    let mut rows = vec![[
        "graph_id",
        "solver",
        "clique_size",
        "proven_optimal",
        "elapsed",
        "timed_out",
    ]
    .map(String::from)
    .to_vec()];
    for rec in records {
        for o in &rec.outcomes {
            rows.push(vec![
                rec.id.clone(),
                o.result.solver_name.clone(),
                o.result.size.to_string(),
                o.result.proven_optimal.to_string(),
                num(o.runtime),
                o.result.timed_out.to_string(),
            ]);
        }
    }
    finish(options, rows)
}

fn parse_label(s: &str, line: usize) -> Result<bool, DatasetError> {
    match s.trim() {
        "1" | "hard" | "true" => Ok(true),
        "0" | "not_hard" | "false" => Ok(false),
        other => Err(DatasetError::Csv(format!("row {line}: bad label {other:?}"))),
    }
}

/// Reads a labeled dataset. Feature columns are every column other than
/// `id`, `label`, `used_largest_component`, `reference_size` and
/// `runtime_*`; runtime columns become per-solver runtimes.
pub fn read_dataset(text: &str) -> Result<Dataset, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(String::from).collect();
    let find = |name: &str| header.iter().position(|h| h == name);
    let id_col = find("id").ok_or_else(|| DatasetError::Csv("missing id column".into()))?;
    let label_col = find("label").ok_or_else(|| DatasetError::Csv("missing label column".into()))?;
    let feature_cols: Vec<usize> = (0..header.len())
        .filter(|&j| !RESERVED.contains(&header[j].as_str()) && !header[j].starts_with(RUNTIME_PREFIX))
        .collect();
    let runtime_cols: Vec<usize> = (0..header.len())
        .filter(|&j| header[j].starts_with(RUNTIME_PREFIX))
        .collect();

    let mut ids = Vec::new();
    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut runtimes: Vec<Vec<f64>> = vec![Vec::new(); runtime_cols.len()];
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let field = |j: usize| record.get(j).unwrap_or("");
        let parse = |j: usize| {
            field(j).parse::<f64>().map_err(|_| {
                DatasetError::Csv(format!("row {}: column {} is not a number", line + 1, header[j]))
            })
        };
        ids.push(field(id_col).to_string());
        features.push(feature_cols.iter().map(|&j| parse(j)).collect::<Result<Vec<_>, _>>()?);
        labels.push(parse_label(field(label_col), line + 1)?);
        for (k, &j) in runtime_cols.iter().enumerate() {
            runtimes[k].push(parse(j)?);
        }
    }
    Dataset::new(
        ids,
        feature_cols.iter().map(|&j| header[j].clone()).collect(),
        features,
        labels,
        runtime_cols
            .iter()
            .zip(runtimes)
            .map(|(&j, v)| (header[j][RUNTIME_PREFIX.len()..].to_string(), v))
            .collect(),
    )
}
