//! File formats, parallel enumeration and the command-line front end for
//! `staged-core`.

pub mod cli;
pub mod dot;
pub mod error;
pub mod json;
pub mod parallel;
pub mod table;

pub use error::CliError;
