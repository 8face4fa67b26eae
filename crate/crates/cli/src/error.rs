use std::path::PathBuf;

use billiards_core::mirror::MirrorError;
use billiards_core::SimError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_CROSS_CHECK: i32 = 3;

/// A configuration problem located by a dotted field path such as `particles[2].x`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("simulation failed: {0}")]
    Simulation(#[from] SimError),
    #[error("mirror system: {0}")]
    Mirror(#[from] MirrorError),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } | CliError::Parse { .. } => EXIT_VALIDATION,
            CliError::Simulation(_) => EXIT_DEGENERATE,
            CliError::Mirror(e) => match e {
                MirrorError::InvalidParams(_)
                | MirrorError::NotElliptic { .. }
                | MirrorError::NotEscaping { .. }
                | MirrorError::Parabolic
                | MirrorError::Precondition(_)
                | MirrorError::FixedPointOrbit { .. } => EXIT_VALIDATION,
                MirrorError::Pole { .. } | MirrorError::ZeroSigma | MirrorError::AtStep { .. } => EXIT_DEGENERATE,
            },
            CliError::CrossCheck(_) => EXIT_CROSS_CHECK,
        }
    }
}
