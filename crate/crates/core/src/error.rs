use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid probability vector: {0}")]
    InvalidPmf(String),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("auxiliary channel is not conditionally symmetric (defect {0:.3e})")]
    Asymmetric(f64),

    #[error("no feasible auxiliary channel: {0}")]
    Infeasible(String),

    #[error("unsupported source: {0}")]
    Unsupported(String),

    #[error("decode failure: {0}")]
    Decode(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(name: &'static str, value: f64, range: impl Into<String>) -> Error {
    Error::OutOfRange {
        name,
        value,
        range: range.into(),
    }
}
