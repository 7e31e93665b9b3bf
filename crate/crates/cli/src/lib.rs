//! File formats, generators and subcommands of the `pcolor` tool, kept in a
//! library so integration tests can drive them directly.

pub mod alloc_counter;
pub mod commands;
pub mod error;
pub mod formats;
pub mod generate;
pub mod output;

pub use commands::{run, Cli};
pub use error::{exit, CliError};
