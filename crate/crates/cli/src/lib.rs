//! Command-line driver and reproducible scenario checks for `matfold-core`.

pub mod report;
pub mod scenarios;

pub use report::{Check, Report};
