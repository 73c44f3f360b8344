//! File formats, exports and the `grt` command-line front end.

pub mod cli;
pub mod error;
pub mod formats;
pub mod output;
