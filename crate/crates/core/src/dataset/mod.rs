//! Learning datasets: assembly from instance records, scaling, stratified
//! partitions, quartile binning, transaction encoding and CSV persistence.

mod bins;
mod io;
mod scale;
mod split;

pub use bins::{quartile_bins, quartile_bins_of, to_transactions, Band, BinScheme, FeatureBins, Item, Transaction, Transactions};
pub use io::{read_dataset, write_dataset, write_features, write_results, CsvOptions};
pub use scale::{minmax_scale, MinMaxScaler};
pub use split::{stratified_kfold, stratified_split, stratified_split_indices};

use thiserror::Error;

use crate::features::FEATURE_NAMES;
use crate::solvers::InstanceRecord;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("dataset is empty")]
    Empty,
    #[error("both classes must be present")]
    SingleClass,
    #[error("class {class} has {count} instances, need at least {need}")]
    ClassTooSmall {
        class: &'static str,
        count: usize,
        need: usize,
    },
    #[error("fraction {0} outside (0, 1)")]
    InvalidFraction(f64),
    #[error("need at least {need} instances, found {found}")]
    TooFew { need: usize, found: usize },
    #[error("inconsistent dataset: {0}")]
    Shape(String),
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for DatasetError {
    fn from(e: csv::Error) -> Self {
        DatasetError::Csv(e.to_string())
    }
}

pub(crate) fn class_name(hard: bool) -> &'static str {
    if hard {
        "hard"
    } else {
        "not_hard"
    }
}

/// Feature matrix, binary hardness labels (`true` = hard), optional
/// per-solver runtime columns, and instance ids. All parallel arrays have
/// one entry per instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub ids: Vec<String>,
    pub feature_names: Vec<String>,
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<bool>,
    pub runtimes: Vec<(String, Vec<f64>)>,
}

impl Dataset {
    pub fn new(
        ids: Vec<String>,
        feature_names: Vec<String>,
        features: Vec<Vec<f64>>,
        labels: Vec<bool>,
        runtimes: Vec<(String, Vec<f64>)>,
    ) -> Result<Self, DatasetError> {
        let d = Dataset {
            ids,
            feature_names,
            features,
            labels,
            runtimes,
        };
        d.validate()?;
        Ok(d)
    }

    /// Rows with the canonical feature names and generated ids.
    pub fn from_rows(features: Vec<Vec<f64>>, labels: Vec<bool>) -> Result<Self, DatasetError> {
        let width = features.first().map_or(FEATURE_NAMES.len(), Vec::len);
        let names = if width == FEATURE_NAMES.len() {
            FEATURE_NAMES.iter().map(|s| s.to_string()).collect()
        } else {
            (0..width).map(|j| format!("f{j}")).collect()
        };
        let ids = (0..features.len()).map(|i| format!("i{i}")).collect();
        Dataset::new(ids, names, features, labels, Vec::new())
    }

    /// Labeled dataset from portfolio records; unresolved records are skipped.
    pub fn from_records(records: &[InstanceRecord]) -> Result<Self, DatasetError> {
        let resolved: Vec<&InstanceRecord> = records.iter().filter(|r| r.is_resolved()).collect();
        let solvers: Vec<String> = resolved
            .first()
            .map(|r| r.outcomes.iter().map(|o| o.result.solver_name.clone()).collect())
            .unwrap_or_default();
        let runtimes = solvers
            .iter()
            .enumerate()
            .map(|(k, name)| (name.clone(), resolved.iter().map(|r| r.outcomes[k].runtime).collect()))
            .collect();
        Dataset::new(
            resolved.iter().map(|r| r.id.clone()).collect(),
            FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
            resolved.iter().map(|r| r.features.values().to_vec()).collect(),
            resolved
                .iter()
                .map(|r| r.label.as_ref().expect("resolved").value.is_hard())
                .collect(),
            runtimes,
        )
    }

    pub fn validate(&self) -> Result<(), DatasetError> {
        let n = self.ids.len();
        if self.features.len() != n || self.labels.len() != n {
            return Err(DatasetError::Shape(format!(
                "{} ids, {} feature rows, {} labels",
                n,
                self.features.len(),
                self.labels.len()
            )));
        }
        let width = self.feature_names.len();
        if let Some(i) = self.features.iter().position(|r| r.len() != width) {
            return Err(DatasetError::Shape(format!("row {i} does not have {width} features")));
        }
        let mut names = self.feature_names.clone();
        names.sort();
        names.dedup();
        if names.len() != width {
            return Err(DatasetError::Shape("duplicate feature names".into()));
        }
        if let Some((name, _)) = self.runtimes.iter().find(|(_, v)| v.len() != n) {
            return Err(DatasetError::Shape(format!("runtime column {name} has wrong length")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn width(&self) -> usize {
        self.feature_names.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.features.iter().map(|r| r[j]).collect()
    }

    pub fn feature_position(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|f| f == name)
    }

    /// `(not_hard, hard)` counts.
    pub fn class_counts(&self) -> (usize, usize) {
        let hard = self.labels.iter().filter(|&&h| h).count();
        (self.len() - hard, hard)
    }

    pub fn runtime(&self, solver: &str) -> Option<&[f64]> {
        self.runtimes
            .iter()
            .find(|(name, _)| name == solver)
            .map(|(_, v)| v.as_slice())
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            feature_names: self.feature_names.clone(),
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            runtimes: self
                .runtimes
                .iter()
                .map(|(name, v)| (name.clone(), indices.iter().map(|&i| v[i]).collect()))
                .collect(),
        }
    }

    /// Keeps only the feature columns at `columns`, in that order.
    pub fn select_features(&self, columns: &[usize]) -> Dataset {
        Dataset {
            ids: self.ids.clone(),
            feature_names: columns.iter().map(|&j| self.feature_names[j].clone()).collect(),
            features: self
                .features
                .iter()
                .map(|r| columns.iter().map(|&j| r[j]).collect())
                .collect(),
            labels: self.labels.clone(),
            runtimes: self.runtimes.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_validation() {
        let err = Dataset::new(
            vec!["a".into()],
            vec!["x".into(), "x".into()],
            vec![vec![1.0, 2.0]],
            vec![true],
            vec![],
        );
        assert!(matches!(err, Err(DatasetError::Shape(_))));
        let err = Dataset::new(vec!["a".into()], vec!["x".into()], vec![vec![1.0]], vec![], vec![]);
        assert!(matches!(err, Err(DatasetError::Shape(_))));
    }

    #[test]
    fn subset_and_select() {
        let d = Dataset::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]], vec![false, true, false])
            .unwrap();
        let s = d.subset(&[2, 0]);
        assert_eq!(s.features, vec![vec![5.0, 6.0], vec![1.0, 2.0]]);
        assert_eq!(s.ids, vec!["i2", "i0"]);
        let c = d.select_features(&[1]);
        assert_eq!(c.feature_names, vec!["f1"]);
        assert_eq!(c.column(0), vec![2.0, 4.0, 6.0]);
        assert_eq!(d.class_counts(), (2, 1));
    }
}
