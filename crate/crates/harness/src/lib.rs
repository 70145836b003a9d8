//! Experiment orchestration: cached moment runs, prediction tables,
//! verification suites and comparison reports.

pub mod cache;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod predict;
pub mod record;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
