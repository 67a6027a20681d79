use std::path::PathBuf;

use quandleforge::classify::ClassifyError;
use quandleforge::construct::ConstructError;
use quandleforge::envgroup::EnvGroupError;
use quandleforge::homology::HomologyError;
use quandleforge::perm::{GroupError, ParseError};
use quandleforge::rack::TableParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Table {
        path: PathBuf,
        source: TableParseError,
    },
    #[error("{path}: {source}")]
    Database {
        path: PathBuf,
        source: ClassifyError,
    },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Cycles(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Enveloping(#[from] EnvGroupError),
    #[error("unknown group {0:?}: use S<n>, A<n>, or a generator list with --degree")]
    UnknownGroup(String),
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("no quandle database: pass --db or set QUANDLEFORGE_DB")]
    NoDatabase,
    #[error("{0}")]
    Failed(String),
}
