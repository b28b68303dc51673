use spinorize_core::Error as CoreError;

pub const EXIT_ARGUMENT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_ARGUMENT,
            Self::Clap(e) => e.exit_code(),
            Self::Core(e) => core_exit_code(e),
            Self::CheckFailed(_) => EXIT_NUMERIC,
            Self::Io { .. } | Self::Csv(_) | Self::Json(_) => EXIT_IO,
        }
    }
}

fn core_exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::AtCoupling { source, .. } => core_exit_code(source),
        CoreError::InvalidParams(_)
        | CoreError::ApproximationMismatch { .. }
        | CoreError::NonIncreasingGrid { .. }
        | CoreError::NonUniformGrid { .. }
        | CoreError::TooFewPoints { .. }
        | CoreError::NoBracket { .. }
        | CoreError::DomainViolation(_) => EXIT_ARGUMENT,
        _ => EXIT_NUMERIC,
    }
}
