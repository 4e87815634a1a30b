//! IO, file formats, the command-line front end and the enumeration
//! harness on top of `invpoly-core`.

pub mod enumerate;
pub mod error;
pub mod formats;
pub mod input;
pub mod limits;

pub use error::{CliError, ExitCode};
