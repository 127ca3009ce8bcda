use thiserror::Error;

use sclab_exact::eliminate::ElimError;
use sclab_exact::multimodular::MultiModError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition {0} is not weakly decreasing")]
    NotAPartition(String),
    #[error("partition {part} does not fit the {rows}x{cols} box")]
    BoxViolation { part: String, rows: usize, cols: usize },
    #[error("codimensions sum to {got}, expected k(n-k) = {expected}")]
    Codimension { got: usize, expected: usize },
    #[error("inner shape {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
    #[error("invalid Grassmannian Gr({k},{n})")]
    BadGrassmannian { k: usize, n: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("characteristic {p} is too small for n = {n}")]
    Characteristic { p: u64, n: usize },
    #[error("repeated parameter value")]
    RepeatedParameter,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    MultiMod(#[from] MultiModError),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Bad input, as opposed to a computation or output failure.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Degenerate(_) | Error::Io(_) | Error::Elim(_) | Error::MultiMod(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
