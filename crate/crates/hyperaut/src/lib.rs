//! Command-line front end, file formats and parallel drivers for
//! `hyperaut-core`.

pub mod checkpoint;
pub mod cli;
pub mod commands;
pub mod data;
pub mod error;
pub mod formats;
pub mod jobs;
pub mod manifest;
pub mod source;

pub use error::{CliError, ExitStatus, Result};
