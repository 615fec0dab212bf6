//! Trace tables, space-time diagrams and analysis reports.

pub mod ascii;
pub mod report;
pub mod svg;
pub mod tsv;
