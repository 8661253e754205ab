//! Experiment harness for the `modelchoice-core` engine: TOML configurations,
//! seeded experiment runners, histogram and table output in JSON or CSV, and
//! the `modelchoice` command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod histogram;
pub mod output;

pub use error::{HarnessError, Result};
