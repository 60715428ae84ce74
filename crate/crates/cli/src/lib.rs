//! Command-line front end: expression parsing, presentation files and
//! report generation.

pub mod commands;
pub mod file;
pub mod parse;

pub use commands::{run, Cli, Command, Report, Status};
