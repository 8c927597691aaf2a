use serde::{Deserialize, Serialize};

use rwkit_core::parallel_rewriting::{ParallelLimits, DEFAULT_MAX_REDEXES};
use rwkit_core::rewriting::{Bounds, DEFAULT_MAX_TERM_SIZE};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Every resource limit and switch an analysis runs under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Node expansions per reachability search; rewrite steps for `normalize`.
    pub fuel: usize,
    pub max_term_size: usize,
    pub max_redexes: usize,
    pub assume_terminating: bool,
    pub output_format: OutputFormat,
    pub dedupe_symmetric_cps: bool,
    pub allow_fresh_consts: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            fuel: rwkit_core::rewriting::DEFAULT_EXPANSIONS,
            max_term_size: DEFAULT_MAX_TERM_SIZE,
            max_redexes: DEFAULT_MAX_REDEXES,
            assume_terminating: false,
            output_format: OutputFormat::Text,
            dedupe_symmetric_cps: false,
            allow_fresh_consts: false,
        }
    }
}

impl AnalysisConfig {
    pub fn bounds(&self) -> Bounds {
        Bounds::new(self.fuel, self.max_term_size)
    }

    pub fn parallel_limits(&self) -> ParallelLimits {
        ParallelLimits {
            max_redexes: self.max_redexes,
            max_term_size: self.max_term_size,
        }
    }
}
