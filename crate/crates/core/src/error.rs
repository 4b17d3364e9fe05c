use std::path::PathBuf;

use thiserror::Error;

use crate::game::StrategyProfile;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// `W < K`: every player prefers to stay out; the boundary profile is attached.
    #[error("no interior equilibrium (W = {whitespace} < K = {cost}); boundary profile {boundary}")]
    NoInteriorEquilibrium { whitespace: f64, cost: f64, boundary: StrategyProfile },

    #[error("degenerate market: W = {whitespace} must exceed K = {cost}")]
    DegenerateMarket { whitespace: f64, cost: f64 },

    #[error("non-finite payoff at profile {profile}")]
    NumericFailure { profile: StrategyProfile },

    #[error("lattice of {points} profiles exceeds the limit of {limit}")]
    ResourceLimit { points: usize, limit: usize },

    #[error("scatter plots need exactly 2 players, got {0}")]
    UnsupportedDimension(usize),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
