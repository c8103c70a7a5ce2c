//! Library side of the `hornlab` binary: argument definitions, the on-disk
//! triple cache, the defaults file and the command implementations.

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;

pub use args::{Cli, Command, Format};
pub use commands::{run, Outcome};
