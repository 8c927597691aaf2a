//! Command-line front end for `rwkit-core`: analysis configuration, the
//! report model and the command dispatcher.

pub mod config;
pub mod report;
pub mod run;

pub use config::{AnalysisConfig, OutputFormat};
pub use report::{render_text, Report, Status};
pub use run::{run, Task};

/// JSON Schema every `--format json` report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");
