//! Command-line front end: configuration documents and analysis reports.

pub mod config;
pub mod report;

pub use config::{load_config, parse_config, ConfigDocument, Q};
pub use report::{analyze, emit_report, Evidence, Format, PointDoc, ReportDocument, StratumRow, Verdict, VerdictStatus};
