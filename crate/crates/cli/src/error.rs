use std::path::PathBuf;

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_COUNTEREXAMPLE: u8 = 3;
pub const EXIT_ASSERTION: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("counterexample found: {0}")]
    Counterexample(String),

    #[error(transparent)]
    Core(#[from] matroid_secretary::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        use matroid_secretary::Error as E;
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::Io { .. } | Self::Csv(_) => EXIT_IO,
            Self::Counterexample(_) => EXIT_COUNTEREXAMPLE,
            Self::Core(E::Assertion(_)) => EXIT_ASSERTION,
            Self::Core(E::TiesExhausted(_)) => EXIT_IO,
            // Everything else stems from the instance or parameters given.
            Self::Core(_) => EXIT_CONFIG,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
