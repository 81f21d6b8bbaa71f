//! Error types shared across the crate.

use crate::game::Coalition;
use thiserror::Error;

/// Failure of the payoff oracle on a specific coalition.
///
/// Carries the offending coalition so callers can report which subset of
/// players (regressors) could not be evaluated.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("payoff evaluation failed for coalition {coalition}: {reason}")]
pub struct EvalError {
    pub coalition: Coalition,
    pub reason: String,
}

/// Errors produced while loading or validating a dataset.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DataError {
    #[error("failed to read {path}: {message}")]
    Io { path: String, message: String },
    #[error("non-numeric cell at row {row}, column {column}: {cell:?}")]
    NonNumeric {
        row: usize,
        column: String,
        cell: String,
    },
    #[error("column {0:?} not found in header")]
    MissingColumn(String),
    #[error("duplicate column name {0:?}")]
    DuplicateColumn(String),
    #[error("dataset is empty")]
    Empty,
    #[error("row {row} has {found} fields, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
}

/// Errors from the regression engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegressionError {
    #[error("design matrix for subset {subset} is rank deficient (condition estimate {condition:.3e})")]
    RankDeficient { subset: Coalition, condition: f64 },
    #[error("too few observations: m={m} cannot fit {regressors} regressors plus intercept")]
    TooFewObservations { m: usize, regressors: usize },
}

/// Top-level error type for valuation, sampling and selection operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exact enumeration supports at most {limit} players, got {n}; use Monte Carlo sampling instead")]
    TooManyPlayers { n: usize, limit: usize },
    #[error("player count must be between 1 and {limit}, got {n}")]
    InvalidPlayerCount { n: usize, limit: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid prior: {0}")]
    Prior(String),
    #[error(transparent)]
    Regression(#[from] RegressionError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("bias ratio is undefined: aggregate D-value is {psi_total:.3e}; inspect per-player values instead")]
    UndefinedBiasRatio { psi_total: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal cross-check failed: {0}")]
    InternalCheck(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
