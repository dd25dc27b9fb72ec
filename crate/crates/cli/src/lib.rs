//! Instance files, task dispatch and reports for the `setconj` binary.

pub mod harness;
pub mod instance;
pub mod report;
