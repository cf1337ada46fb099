use std::path::PathBuf;

use slate_core::codec::CodecError;
use slate_core::eval::EvalError;
use slate_core::tagger::TaggerError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("region {region}: {}", violations.join("; "))]
    InvalidRegion { region: String, violations: Vec<String> },
    #[error("duplicate region_id {0}")]
    DuplicateRegion(String),
    #[error("unknown region_id {0}")]
    UnknownRegion(String),
    #[error("region {region}: length mismatch: {labels} labels for {words} words")]
    LengthMismatch { region: String, labels: usize, words: usize },
    #[error("region {region}: {message}")]
    BadSpans { region: String, message: String },
    #[error("{}: expected a {expected} model", path.display())]
    WrongModelKind { path: PathBuf, expected: &'static str },
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Tagger(#[from] TaggerError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}
