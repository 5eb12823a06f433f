//! Command line and JSON-over-HTTP front end for clusterforge.

pub mod commands;
pub mod serve;

pub use commands::{run, Cli, Command, Failure, Outcome};
