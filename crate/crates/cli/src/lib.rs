//! Command-line front end: input formats, catalog shorthands, commands and
//! the seeded property suites.

pub mod args;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod inputs;
pub mod suites;

pub use args::Cli;
pub use commands::{execute, run, Outcome};
pub use error::{CliError, CliResult};
