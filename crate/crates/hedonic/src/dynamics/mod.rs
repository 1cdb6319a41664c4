//! IS deviation dynamics: policies, runs, replays and bundled scripts.

mod run;
mod scripts;

use thiserror::Error;

use crate::core::CoreError;
use crate::potentials::PotentialError;

pub use run::{
    replay, replay_final, run, run_batch, validate_trace, FilterKind, Policy, RunConfig, RunOutcome, Trace,
    TraceStep,
};
pub(crate) use run::passes;
pub use scripts::{hdg_homogeneous, reach_state_scripts, HomogeneousColor, NamedScript};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("scripted move {step} is invalid: {reason}")]
    ScriptedMoveInvalid { step: usize, reason: String },
    #[error("filter rejected every available deviation at step {step}")]
    FilterStarvation { step: usize },
    #[error("solitary homogeneity needs a diversity game")]
    FilterNeedsDiversityGame,
    #[error("invariant violated at step {step}: {detail}")]
    InvariantViolated { step: usize, detail: String },
    #[error("partition has {partition} agents, game has {game}")]
    SizeMismatch { game: usize, partition: usize },
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Core(#[from] CoreError),
}
