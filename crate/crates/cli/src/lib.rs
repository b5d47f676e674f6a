//! Library side of the `lipcheb` command-line tool.

pub mod app;
pub mod cloudfile;
pub mod error;
pub mod output;

pub use app::{run, Cli, Outcome};
pub use error::CliError;
