//! Command-line front end for `qldpc`: code construction, single-syndrome
//! decoding and Monte Carlo sweeps, with alist matrix files and JSON run
//! manifests.

pub mod alist;
pub mod cli;
pub mod commands;
mod error;
pub mod families;
pub mod manifest;

pub use error::CliError;
