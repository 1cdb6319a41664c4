//! Bundled instances from the literature, random generators and the
//! hardness-reduction gadget generators.

mod catalog;
mod claims;
mod formula;
mod hdg_builder;
mod random;
pub mod reductions;

use thiserror::Error;

use crate::core::{CoreError, DeviationMove, Partition};
use crate::games::{GameError, HedonicGame};

pub use catalog::{build, catalog_ids, fhg_clique};
pub use claims::{check_claim, ClaimVerdict};
pub use formula::{Lit, SatFormula, X3CInstance};
pub(crate) use hdg_builder::r;
pub use hdg_builder::{homogeneous_coalition, HdgBuilder, OrderSpec, ScriptWriter};
pub use random::{random, FhgFamily, RandomSpec};
pub use reductions::{reduce, ReductionInput, ReductionKind, ReductionParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("unknown instance id {0:?}")]
    UnknownId(String),
    #[error("input outside the formula class: {0}")]
    FormulaClassViolation(String),
    #[error("constant inequality violated: {0}")]
    ConstantInequalityViolation(String),
    #[error("inconsistent restrictions: {0}")]
    InconsistentRestrictions(String),
    #[error("claim cannot be checked: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// A machine-checkable statement about an instance. Names refer to the
/// instance's `starts` and `scripts`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Claim {
    /// No partition is IS.
    NoIsPartition,
    /// The named start is IS.
    Stable { start: String },
    /// The named start is the only IS partition.
    UniqueIs { start: String },
    /// The script replays from `start` and ends in `end`.
    ScriptReaches { script: String, start: String, end: String },
    /// The script replays from `start` and returns to it.
    CycleScript { script: String, start: String },
    /// Along the cycle script, each state admits exactly the scripted IS move.
    ForcedCycle { script: String, start: String },
    /// Some IS dynamics from `start` cycles.
    CycleReachable { start: String },
    /// No IS dynamics from `start` reaches an IS partition.
    NoPathToStability { start: String },
    /// Some IS dynamics from `start` reaches an IS partition.
    PathToStability { start: String },
    /// Every agent's order is strict (`holds`) or some agent's is not.
    Strict { holds: bool },
    /// Every order is single-peaked on the natural axis, or some is not.
    NaturalSp { holds: bool },
    /// Every AHG order is single-peaked on the given size axis.
    AxisSp { axis: Vec<usize> },
    /// Every move of the script passes the solitary-homogeneity filter.
    SolitaryHomogeneous { script: String },
}

/// A named game with its start partitions, scripts and expected claims.
#[derive(Debug, Clone)]
pub struct NamedInstance {
    pub id: String,
    pub game: HedonicGame,
    pub starts: Vec<(String, Partition)>,
    pub scripts: Vec<(String, Vec<DeviationMove>)>,
    pub expected: Vec<Claim>,
    /// Free-form construction notes (constants, tail completion).
    pub notes: Vec<(String, String)>,
}

impl NamedInstance {
    pub fn new(id: impl Into<String>, game: impl Into<HedonicGame>) -> Self {
        NamedInstance {
            id: id.into(),
            game: game.into(),
            starts: Vec::new(),
            scripts: Vec::new(),
            expected: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn start(&self, name: &str) -> Option<&Partition> {
        self.starts.iter().find(|(k, _)| k == name).map(|(_, p)| p)
    }

    pub fn script(&self, name: &str) -> Option<&[DeviationMove]> {
        self.scripts.iter().find(|(k, _)| k == name).map(|(_, m)| m.as_slice())
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.notes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub(crate) fn with_start(mut self, name: &str, p: Partition) -> Self {
        self.starts.push((name.into(), p));
        self
    }

    pub(crate) fn with_script(mut self, name: &str, moves: Vec<DeviationMove>) -> Self {
        self.scripts.push((name.into(), moves));
        self
    }

    pub(crate) fn with_claims(mut self, claims: Vec<Claim>) -> Self {
        self.expected.extend(claims);
        self
    }

    pub(crate) fn with_note(mut self, key: &str, value: impl Into<String>) -> Self {
        self.notes.push((key.into(), value.into()));
        self
    }
}
