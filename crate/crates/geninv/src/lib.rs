//! File formats and command-line front end for [`geninv_core`].
//!
//! - [`corpus`]: JSON corpus files (load, save, exact round-trip).
//! - [`classify`]: per-matrix classification reports.
//! - [`verify`]: parallel theorem suites over a corpus.
//! - [`cli`]: the `geninv` binary's commands and exit codes.

pub mod classify;
pub mod cli;
pub mod corpus;
mod error;
pub mod json;
pub mod verify;

pub use error::{Error, Result};
