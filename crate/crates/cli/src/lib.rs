//! Command-line front end for lifted (α,β)-metrics: instance files, shipped
//! presets and curvature reports.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
pub mod instance;
pub mod presets;
pub mod report;

pub use error::CliError;
pub use instance::{parse_instance, resolve_tolerances, validate, Instance, InstanceFile, ToleranceOverrides};
pub use report::{render_text, run_analysis, AnalysisOptions, Num, Report};

use std::path::Path;

/// Reads, parses and validates an instance file.
pub fn load_file(path: &Path, overrides: &ToleranceOverrides) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_text(&text, overrides)
}

pub fn load_text(text: &str, overrides: &ToleranceOverrides) -> Result<Instance, CliError> {
    let file = parse_instance(text)?;
    let tol = resolve_tolerances(&file, overrides)?;
    validate(file, tol)
}
