use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed pmf file {path}: {source}")]
    PmfFormat {
        path: String,
        source: serde_json::Error,
    },

    #[error(transparent)]
    Core(#[from] gwcache_core::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 3 for infeasible optimization, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(gwcache_core::Error::Infeasible(_)) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
