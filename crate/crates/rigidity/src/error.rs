use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid length for {edge}: {reason}")]
    Length { edge: String, reason: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rigidity_core::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Read { .. } => "read",
            Error::Write { .. } => "write",
            Error::Json(_) => "syntax",
            Error::Length { .. } => "invalid_length",
            Error::Usage(_) => "usage",
            Error::Core(e) => e.code(),
        }
    }

    /// 2 for certification failures, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Core(e) if e.is_certification() => 2,
            _ => 1,
        }
    }
}
