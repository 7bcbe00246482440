//! Command-line front end and threaded search for `bs-limits-core`.

pub mod cli;
pub mod config;
pub mod search;

pub use cli::{run, Cli};
pub use config::Config;
