//! Library side of the `jspec` binary: run configurations, their
//! execution, and JSON/CSV/table rendering.

pub mod batch;
pub mod config;
pub mod error;
pub mod render;
pub mod run;

pub use config::{Command, OutputFormat, RunConfig, TheoremArg};
pub use error::CliError;
pub use run::{execute, Outcome};
