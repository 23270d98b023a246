//! Library half of the command-line tool: verification suites, reports,
//! and table rendering. The acceptance tests drive these directly with
//! pinned grid bounds.

pub mod report;
pub mod suites;
pub mod table;
