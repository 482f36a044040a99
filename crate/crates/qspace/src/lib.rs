pub use qspace_core as core;

pub mod config;
pub mod csvio;
pub mod expr;
pub mod report;
pub mod suites;
