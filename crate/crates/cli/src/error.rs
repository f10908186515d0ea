use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Library(#[from] figraph::Error),
}

impl CliError {
    /// 2 for misuse, 3 for a capacity breach, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use figraph::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Library(E::Capacity { .. }) => 3,
            CliError::Library(
                E::InvalidGraph(_)
                | E::InvalidInjection(_)
                | E::InvalidSpec(_)
                | E::InvalidArgument(_)
                | E::UnknownLabel(_)
                | E::InsufficientSamples { .. }
                | E::DuplicateAbscissa(_),
            ) => 2,
            CliError::Library(_) => 1,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(format!("json: {e}"))
    }
}
