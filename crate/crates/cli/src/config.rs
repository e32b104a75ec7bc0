use std::path::Path;

use semshift::align::AlignConfig;
use semshift::analysis::ExperimentConfig;
use semshift::fixtures::{ClassCorpusConfig, ViewpointPairConfig};
use semshift::stability::StabilityParams;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SummaryConfig {
    /// Stability threshold; the report's 25th percentile when absent.
    pub threshold: Option<f64>,
    pub length: usize,
}

impl Default for SummaryConfig {
    fn default() -> Self {
        SummaryConfig { threshold: None, length: 5 }
    }
}

/// Contents of a `--config` TOML file. Every section is optional; command
/// line flags take precedence over anything set here.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub align: AlignConfig,
    pub stability: StabilityParams,
    pub summary: SummaryConfig,
    pub experiment: ExperimentConfig,
    pub pair: ViewpointPairConfig,
    pub classes: ClassCorpusConfig,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::user(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::user(format!("{}: {e}", path.display())))
    }
}
