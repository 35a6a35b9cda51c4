use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Numeric {
        context: String,
        #[source]
        source: krylov_core::Error,
    },

    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for invalid configuration, 3 for numeric domain errors, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric { source, .. } if source.is_domain() => 3,
            CliError::Numeric { .. } => 2,
            CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl std::fmt::Display, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }
}

/// Attaches a description of the failing step to core errors.
pub(crate) trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> std::result::Result<T, CliError>;
}

impl<T> Context<T> for krylov_core::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> std::result::Result<T, CliError> {
        self.map_err(|source| CliError::Numeric {
            context: what(),
            source,
        })
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
