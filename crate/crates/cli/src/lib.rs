//! IO companion to `fdca-core`: text formats for grids and automaton
//! descriptions, experiment configuration, rayon-parallel scan drivers, the
//! ladder experiment runner, and deterministic CSV/JSON reports.

pub mod config;
pub mod describe;
pub mod error;
pub mod experiment;
pub mod formats;
pub mod parallel;
pub mod report;

pub use error::{CliError, Result};
