//! Subcommand implementations behind the `rjspectral` binary.

pub mod args;
pub mod commands;
pub mod output;
