//! Command-line front end: argument model, command dispatch, output
//! formats and the acceptance criteria.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

pub use config::RunConfig;
pub use output::{CliError, Output};
