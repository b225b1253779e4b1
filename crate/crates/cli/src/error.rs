use std::path::PathBuf;

use netcache_core::model::ModelError;
use netcache_core::reductions::ReductionError;
use netcache_core::solvers::SolveError;
use thiserror::Error;

/// A position in a text document, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    /// Line and column of byte `offset` in `text`.
    pub fn of_offset(text: &str, offset: usize) -> Position {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Position { line, column }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}:{}:{}: {message}", at.line, at.column)]
    Parse { origin: String, at: Position, message: String },
    #[error("{origin}: invalid instance: {source}")]
    Validation { origin: String, source: ModelError },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("solvers disagree: {0}")]
    Disagreement(String),
}

impl CliError {
    /// `0` and `1` are reserved for yes and no answers.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Parse { .. } => 4,
            CliError::Validation { .. } => 5,
            CliError::Solve(SolveError::TooLarge { .. }) => 6,
            CliError::Solve(SolveError::NotHomogeneous) | CliError::Reduction(ReductionError::NotHomogeneous) => 7,
            CliError::Solve(SolveError::NoFeasibleAlgorithm { .. }) => 8,
            CliError::Reduction(_) => 9,
            CliError::Disagreement(_) => 10,
        }
    }
}
