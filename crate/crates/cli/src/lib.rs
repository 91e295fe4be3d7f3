//! Batch front end: scenario files, runs, sweeps and post-processing of run
//! directories.

pub mod checkpoint;
pub mod config;
pub mod data;
pub mod diagnostics;
pub mod error;
pub mod manifest;
pub mod post;
pub mod run;
pub mod sweep;

pub use config::{load_config, parse_config, parse_config_with, Scenario};
pub use error::{CliError, Result};
pub use run::{run, RunArtifacts, RunReport};
pub use sweep::{sweep, SweepResult};
