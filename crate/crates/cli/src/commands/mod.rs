//! One function per pipeline stage. Stages read their inputs from files and
//! write their outputs into the configured output directory.

mod features;
mod label;
mod mine;
mod report;
mod runtime;
mod train;

use std::path::{Path, PathBuf};

use graphhard_core::dataset::{read_dataset, Dataset};

pub use features::cmd_features;
pub use label::cmd_label;
pub use mine::cmd_mine;
pub use report::cmd_report;
pub use runtime::cmd_runtime;
pub use train::cmd_train;

use crate::error::CliError;
use crate::output::read_text;

pub(crate) fn load_dataset(path: &Path) -> Result<Dataset, CliError> {
    let text = read_text(path)?;
    read_dataset(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Diagnostics rows: `(id, stage, severity, message)`.
pub(crate) type Diagnostic = [String; 4];

pub(crate) fn diagnostic(id: &str, stage: &str, severity: &str, message: impl Into<String>) -> Diagnostic {
    [id.to_string(), stage.to_string(), severity.to_string(), message.into()]
}

pub(crate) const DIAGNOSTIC_COLUMNS: [&str; 4] = ["id", "stage", "severity", "message"];

pub type Written = Vec<PathBuf>;
