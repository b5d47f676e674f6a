use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input file or argument; exit code 2.
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] lipcheb_core::Error),

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}
