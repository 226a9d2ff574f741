//! Monte-Carlo oracle, batch evaluation, output formatting, verification
//! suites and the command-line front end for `exact-svar-core`.

pub mod batch;
pub mod cli;
pub mod config;
pub mod data;
pub mod error;
pub mod mc_oracle;
pub mod output;
pub mod verify;

pub use error::CliError;
