//! Potential functions, as standalone evaluators and as run monitors.

mod gamma;
mod lambda;
mod lambda_r;
mod lex;
mod monitor;

use thiserror::Error;

use crate::core::CoreError;

pub use gamma::{fhg_clique_edges, gamma, GammaMonitor};
pub use lambda::{
    lambda_init, lambda_peaks, lambda_step, CoalitionEntry, LambdaCase, LambdaMonitor, LambdaState, LambdaStep,
};
pub use lambda_r::{lambda_r, LambdaRMonitor};
pub use lex::{default_sigma, lex_compare, lex_potential, validate_sigma, LexMonitor, LexPotential};
pub use monitor::{build_monitor, Monitor, MonitorReading, MonitorRef, ReadingValue};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PotentialError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("sigma is not a topological order")]
    NotTopological,
    #[error("invariant broken: {0}")]
    InvariantBroken(String),
    #[error("{0}")]
    WrongGame(&'static str),
    #[error("unknown monitor {0:?}")]
    UnknownMonitor(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
