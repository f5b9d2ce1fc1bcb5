use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("malformed file {path}: {msg}")]
    Malformed { path: String, msg: String },
    #[error("bad graph notation {text:?}: {msg}")]
    Notation { text: String, msg: String },
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("sector cap exceeded: {count} basis elements, cap is {cap}")]
    CapExceeded { count: u128, cap: usize },
    #[error("{0}")]
    Core(qcgd_core::Error),
}

impl From<qcgd_core::Error> for Error {
    fn from(e: qcgd_core::Error) -> Self {
        match e {
            qcgd_core::Error::CapExceeded { count, cap } => Error::CapExceeded { count, cap },
            qcgd_core::Error::BasisMismatch => Error::BasisMismatch("operands are defined over different bases".into()),
            other => Error::Core(other),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
