//! File formats and report records for the `trigbn` command-line tool.

pub mod report;
pub mod svg;
pub mod sweep;
