use hyperaut_core::Error as CoreError;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExitStatus {
    Success = 0,
    ClaimsMismatch = 1,
    InputError = 2,
    ResourceLimit = 3,
    Undecided = 4,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("claims mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn json(context: impl Into<String>, source: serde_json::Error) -> CliError {
        CliError::Json {
            context: context.into(),
            source,
        }
    }

    pub fn exit_status(&self) -> ExitStatus {
        match self {
            CliError::Core(e) => match e {
                CoreError::LimitExceeded { .. } | CoreError::DomainTooLarge(_) => ExitStatus::ResourceLimit,
                CoreError::Undecided { .. } => ExitStatus::Undecided,
                CoreError::CatalogVerification { .. } => ExitStatus::ClaimsMismatch,
                _ => ExitStatus::InputError,
            },
            CliError::Mismatch(_) => ExitStatus::ClaimsMismatch,
            CliError::Io { .. } | CliError::Json { .. } | CliError::Input(_) => ExitStatus::InputError,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
