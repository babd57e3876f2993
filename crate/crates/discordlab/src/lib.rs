//! Command-line front end for `discordlab-core`.
//!
//! Commands: `evolve`, `scan-basis`, `detect`, `classify`, `survey`. Each
//! takes an optional JSON [`RunConfig`] plus flag overrides and emits CSV
//! (and, for `detect`, a JSON event summary).

pub mod config;
pub mod error;
pub mod format;
pub mod run;

pub use config::{Command, Overrides, RunConfig, StateDescriptor, Tolerances};
pub use error::CliError;
pub use run::{execute, run, Output};
