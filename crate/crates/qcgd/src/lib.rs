//! File formats, figure export and the `qcgd` command-line front-end for
//! [`qcgd_core`].

pub mod artifacts;
pub mod cli;
pub mod config;
pub mod error;
pub mod export;
pub mod formats;
pub mod notation;
pub mod random;

pub use error::{Error, Result};
