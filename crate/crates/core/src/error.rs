use num_rational::Rational64;
use thiserror::Error;

use crate::qalg::{ParseError, SeriesError};

/// Errors raised by the library.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("content {0:?} is not dominant")]
    NonDominant(Vec<usize>),
    #[error("unsupported factor shape {rows}x{cols}: only single rows are supported")]
    UnsupportedShape { rows: usize, cols: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid rigged configuration: {0}")]
    InvalidRiggedConfiguration(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("exponent does not grow: {0}")]
    NonGrowing(String),
    #[error("insufficient input order: need {required}, have {available}")]
    InsufficientOrder { required: Rational64, available: Rational64 },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset `{name}`: {message}")]
    Preset { name: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
