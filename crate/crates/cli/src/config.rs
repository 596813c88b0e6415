//! Pipeline configuration: a TOML file of `key = value` pairs under
//! section headers. Every key is optional.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use graphhard_core::features::DEFAULT_ZERO_TOL;
use graphhard_core::ml::{BoostParams, ClassWeighting, ClassifierSpec, Family, Hyperparameters};
use graphhard_core::solvers::{Clock, PortfolioConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    /// One `u v` pair per line.
    Edgelist,
    /// `p edge n m` header and `e u v` lines.
    Dimacs,
    /// `<name>_A.txt` plus `<name>_graph_indicator.txt`.
    Tudataset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    /// A graph file, or a directory of them (TU datasets: the directory).
    pub path: PathBuf,
    pub format: CorpusFormat,
    /// TU dataset prefix; empty means the directory's only `*_A.txt`.
    pub name: String,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            path: PathBuf::from("corpus"),
            format: CorpusFormat::Edgelist,
            name: String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeatureConfig {
    /// Eigenvalues within `zero_tol * max(1, spectral radius)` of 0 count as zero.
    pub zero_tol: f64,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            zero_tol: DEFAULT_ZERO_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub time_limit: f64,
    pub restarts: usize,
    pub repeats: usize,
    /// `wall` (seconds) or `effort` (deterministic work counts).
    pub clock: Clock,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let p = PortfolioConfig::default();
        SolverConfig {
            time_limit: p.time_limit,
            restarts: p.restarts,
            repeats: p.repeats,
            clock: p.clock,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitConfig {
    pub test_fraction: f64,
    pub folds: usize,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            test_fraction: 0.2,
            folds: 5,
        }
    }
}

/// Class weighting as written in the config: `none`, `balanced`, or
/// `custom:<not_hard>:<hard>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Weighting(pub ClassWeighting);

impl FromStr for Weighting {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Weighting(ClassWeighting::None)),
            "balanced" => Ok(Weighting(ClassWeighting::Balanced)),
            _ => {
                let bad = || format!("class weighting `{s}` is not none, balanced or custom:<w>:<w>");
                let rest = s.strip_prefix("custom:").ok_or_else(bad)?;
                let (a, b) = rest.split_once(':').ok_or_else(bad)?;
                let not_hard = a.parse().map_err(|_| bad())?;
                let hard = b.parse().map_err(|_| bad())?;
                Ok(Weighting(ClassWeighting::Custom { not_hard, hard }))
            }
        }
    }
}

impl TryFrom<String> for Weighting {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<Weighting> for String {
    fn from(w: Weighting) -> String {
        w.to_string()
    }
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            ClassWeighting::None => f.write_str("none"),
            ClassWeighting::Balanced => f.write_str("balanced"),
            ClassWeighting::Custom { not_hard, hard } => write!(f, "custom:{not_hard}:{hard}"),
        }
    }
}

/// Grid for the two linear families; the cartesian product is searched.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinearGrid {
    pub l2: Vec<f64>,
    pub learning_rate: Vec<f64>,
    pub epochs: Vec<usize>,
    pub class_weighting: Vec<Weighting>,
}

impl Default for LinearGrid {
    fn default() -> Self {
        LinearGrid {
            l2: vec![1e-4, 1e-2],
            learning_rate: vec![0.5],
            epochs: vec![500],
            class_weighting: vec![Weighting(ClassWeighting::None), Weighting(ClassWeighting::Balanced)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TreeGrid {
    pub trees: Vec<usize>,
    pub max_depth: Vec<usize>,
    pub learning_rate: Vec<f64>,
    pub min_samples_leaf: Vec<usize>,
    pub subsample: Vec<f64>,
    pub class_weighting: Vec<Weighting>,
}

impl Default for TreeGrid {
    fn default() -> Self {
        let b = BoostParams::default();
        TreeGrid {
            trees: vec![50, 100],
            max_depth: vec![b.max_depth],
            learning_rate: vec![0.2],
            min_samples_leaf: vec![b.min_samples_leaf],
            subsample: vec![b.subsample],
            class_weighting: vec![Weighting(ClassWeighting::None), Weighting(ClassWeighting::Balanced)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    /// Labeled dataset; defaults to `<out>/instances.csv`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<PathBuf>,
    pub families: Vec<Family>,
    /// Length of the forward-selection trajectory.
    pub max_features: usize,
    /// Forward selection uses this family's best grid point, reweighted.
    pub selection_family: Family,
    pub selection_weighting: Weighting,
    pub logistic: LinearGrid,
    pub linear_margin: LinearGrid,
    pub boosted_trees: TreeGrid,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dataset: None,
            families: Family::ALL.to_vec(),
            max_features: 4,
            selection_family: Family::Logistic,
            selection_weighting: Weighting(ClassWeighting::Balanced),
            logistic: LinearGrid::default(),
            linear_margin: LinearGrid::default(),
            boosted_trees: TreeGrid::default(),
        }
    }
}

impl TrainConfig {
    /// Grid points of `family` in declaration order (last key varies fastest).
    pub fn grid(&self, family: Family, seed: u64) -> Vec<ClassifierSpec> {
        let mut out = Vec::new();
        match family {
            Family::Logistic | Family::LinearMargin => {
                let g = if family == Family::Logistic {
                    &self.logistic
                } else {
                    &self.linear_margin
                };
                for &l2 in &g.l2 {
                    for &learning_rate in &g.learning_rate {
                        for &epochs in &g.epochs {
                            for w in &g.class_weighting {
                                let h = Hyperparameters {
                                    l2,
                                    learning_rate,
                                    epochs,
                                    ..Hyperparameters::default()
                                };
                                out.push(ClassifierSpec::new(family, h).with_weighting(w.0).with_seed(seed));
                            }
                        }
                    }
                }
            }
            Family::BoostedTrees => {
                let g = &self.boosted_trees;
                for &trees in &g.trees {
                    for &max_depth in &g.max_depth {
                        for &learning_rate in &g.learning_rate {
                            for &min_samples_leaf in &g.min_samples_leaf {
                                for &subsample in &g.subsample {
                                    for w in &g.class_weighting {
                                        let h = Hyperparameters {
                                            trees,
                                            max_depth,
                                            learning_rate,
                                            min_samples_leaf,
                                            subsample,
                                            ..Hyperparameters::default()
                                        };
                                        out.push(
                                            ClassifierSpec::new(family, h).with_weighting(w.0).with_seed(seed),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BinSource {
    /// Quartile edges from every instance.
    Full,
    /// Quartile edges from the hard instances only.
    Hard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MineConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<PathBuf>,
    /// Itemset support threshold over the hard-only transactions.
    pub min_support: f64,
    pub min_confidence: f64,
    /// Rules whose antecedent support falls below this are dropped.
    pub antecedent_floor: f64,
    pub max_antecedent: usize,
    pub bins_from: BinSource,
}

impl Default for MineConfig {
    fn default() -> Self {
        MineConfig {
            dataset: None,
            min_support: 0.1,
            min_confidence: 0.5,
            antecedent_floor: 0.1,
            max_antecedent: graphhard_core::arm::DEFAULT_MAX_ANTECEDENT,
            bins_from: BinSource::Full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuntimeConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<PathBuf>,
    /// Solvers to model; empty means every runtime column.
    pub solvers: Vec<String>,
    /// Fit `ln(runtime)`; metrics stay in original units.
    pub log_target: bool,
    pub trees: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub min_samples_leaf: usize,
    pub subsample: f64,
}

impl Default for RuntimeConfig {
    fn default() -> Self {
        let b = BoostParams::default();
        RuntimeConfig {
            dataset: None,
            solvers: Vec::new(),
            log_target: false,
            trees: 200,
            max_depth: b.max_depth,
            learning_rate: b.learning_rate,
            min_samples_leaf: b.min_samples_leaf,
            subsample: b.subsample,
        }
    }
}

impl RuntimeConfig {
    pub fn boost_params(&self, seed: u64) -> BoostParams {
        BoostParams {
            trees: self.trees,
            learning_rate: self.learning_rate,
            max_depth: self.max_depth,
            min_samples_leaf: self.min_samples_leaf,
            subsample: self.subsample,
            seed,
            ..BoostParams::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    pub out: PathBuf,
    pub corpus: CorpusConfig,
    pub features: FeatureConfig,
    pub solvers: SolverConfig,
    pub split: SplitConfig,
    pub train: TrainConfig,
    pub mine: MineConfig,
    pub runtime: RuntimeConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            out: PathBuf::from("out"),
            corpus: CorpusConfig::default(),
            features: FeatureConfig::default(),
            solvers: SolverConfig::default(),
            split: SplitConfig::default(),
            train: TrainConfig::default(),
            mine: MineConfig::default(),
            runtime: RuntimeConfig::default(),
        }
    }
}

fn unit_open(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} = {v} must lie in (0, 1)")))
    }
}

fn unit_closed(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} = {v} must lie in (0, 1]")))
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let c: PipelineConfig = toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        unit_open("split.test_fraction", self.split.test_fraction)?;
        unit_closed("mine.min_support", self.mine.min_support)?;
        unit_closed("mine.min_confidence", self.mine.min_confidence)?;
        unit_closed("mine.antecedent_floor", self.mine.antecedent_floor)?;
        if self.split.folds < 2 {
            return Err(CliError::Usage("split.folds must be at least 2".into()));
        }
        if self.mine.max_antecedent == 0 {
            return Err(CliError::Usage("mine.max_antecedent must be positive".into()));
        }
        if !(self.solvers.time_limit >= 0.0) || self.solvers.repeats == 0 || self.solvers.restarts == 0 {
            return Err(CliError::Usage(
                "solvers: time_limit must be non-negative, repeats and restarts positive".into(),
            ));
        }
        if !(self.features.zero_tol >= 0.0) {
            return Err(CliError::Usage("features.zero_tol must be non-negative".into()));
        }
        if self.train.families.is_empty() {
            return Err(CliError::Usage("train.families is empty".into()));
        }
        for &f in &self.train.families {
            let grid = self.train.grid(f, self.seed);
            if grid.is_empty() {
                return Err(CliError::Usage(format!("train: the {f} grid is empty")));
            }
            for spec in &grid {
                spec.validate()?;
            }
        }
        if self.runtime.trees == 0 || self.runtime.max_depth == 0 || !(self.runtime.learning_rate > 0.0) {
            return Err(CliError::Usage("runtime: trees, max_depth and learning_rate must be positive".into()));
        }
        Ok(())
    }

    pub fn portfolio(&self) -> PortfolioConfig {
        PortfolioConfig {
            time_limit: self.solvers.time_limit,
            restarts: self.solvers.restarts,
            repeats: self.solvers.repeats,
            seed: self.seed,
            zero_tol: self.features.zero_tol,
            clock: self.solvers.clock,
        }
    }

    /// Hash of every setting that can change an output. The output
    /// directory is left out so identical runs into different directories
    /// agree byte for byte.
    pub fn fingerprint(&self) -> String {
        let mut c = self.clone();
        c.out = PathBuf::new();
        let digest = Sha256::digest(c.to_toml().as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }

    pub fn dataset_path(&self, explicit: &Option<PathBuf>) -> PathBuf {
        explicit.clone().unwrap_or_else(|| self.out.join("instances.csv"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = PipelineConfig::default();
        c.validate().unwrap();
        let back = PipelineConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
        assert_eq!(PipelineConfig::from_toml("").unwrap(), c);
    }

    #[test]
    fn sections_override_defaults() {
        let c = PipelineConfig::from_toml(
            "seed = 7\n[split]\nfolds = 3\n[mine]\nbins_from = \"hard\"\n[train.boosted_trees]\nclass_weighting = [\"custom:1:20\"]\n",
        )
        .unwrap();
        assert_eq!((c.seed, c.split.folds, c.mine.bins_from), (7, 3, BinSource::Hard));
        let grid = c.train.grid(Family::BoostedTrees, 7);
        assert_eq!(grid.len(), 2);
        assert_eq!(grid[0].class_weighting, ClassWeighting::Custom { not_hard: 1.0, hard: 20.0 });
        assert_eq!(grid[0].seed, 7);
    }

    #[test]
    fn rejects_bad_values() {
        for bad in [
            "[split]\ntest_fraction = 1.0",
            "[mine]\nmin_support = 0.0",
            "[split]\nfolds = 1",
            "[train.logistic]\nlearning_rate = [0.0]",
            "[train]\nunknown = 1",
            "[train.logistic]\nclass_weighting = [\"heavy\"]",
        ] {
            let e = PipelineConfig::from_toml(bad).unwrap_err();
            assert_eq!(e.exit_code(), 1, "{bad}");
        }
    }

    #[test]
    fn fingerprint_ignores_output_directory() {
        let a = PipelineConfig::default();
        let mut b = a.clone();
        b.out = PathBuf::from("elsewhere");
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.seed = 1;
        assert_ne!(a.fingerprint(), b.fingerprint());
    }
}
