//! Command-line layer over `hopf-core`: descriptors, scenarios, reports
//! and verification suites.

pub mod descriptor;
pub mod error;
pub mod report;
pub mod scenario;
pub mod suites;

pub use error::CliError;
