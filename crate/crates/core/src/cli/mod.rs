//! Command-line front end: equation parsing, run configuration, the
//! solve / structure / criterion pipeline, and reports.

mod args;
mod config;
mod parser;
mod pipeline;
mod report;

pub use args::Args;
pub use config::{Format, LambdaMode, Mode, RunConfig};
pub use parser::{parse_equation, parse_expression, ParseError};
pub use pipeline::{check_characteristic, run_pipeline};
pub use report::{
    emit_report, AnsatzReport, BlockReport, BoundReport, CheckEntry, CriterionReport, DimEntry, EquationReport,
    ErrorKind, ErrorReport, LambdaReport, Report, ShiftReport, StructureReport, VerdictReport, SCHEMA_VERSION,
};
