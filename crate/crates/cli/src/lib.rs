//! The `zeta-kit` command line: graph file formats, per-graph reports and the
//! subcommands that drive the core library.
//!
//! Exit statuses: 0 success, 1 usage or I/O error, 2 parse error, 3 invariant
//! violation. Machine output is JSON carrying `"schema": "zeta-kit/1"`, with
//! exact rationals as `"p/q"` strings.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use commands::{run, Cli};
pub use error::CliError;
pub use formats::{GraphDocument, ParseError};

pub const SCHEMA: &str = "zeta-kit/1";
