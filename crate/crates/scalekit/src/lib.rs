//! File formats and command-line front end for `scalekit-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod json;

pub use error::FormatError;
pub use scalekit_core as core;
