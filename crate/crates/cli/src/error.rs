use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hxh_einstein::Error),

    #[error("unknown space `{0}`")]
    UnknownSpace(String),

    #[error("{0}")]
    BadArg(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },

    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 2 for usage errors (bad space, bad metric, bad flags), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownSpace(_) | CliError::BadArg(_) => 2,
            CliError::Core(hxh_einstein::Error::InvalidMetric(_))
            | CliError::Core(hxh_einstein::Error::OutOfRange(_)) => 2,
            _ => 1,
        }
    }
}
