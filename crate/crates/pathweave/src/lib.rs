//! File formats, configuration, state persistence, reports and commands
//! around `pathweave-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod reports;
pub mod state;

pub use config::Config;
pub use error::{CliError, Result};
