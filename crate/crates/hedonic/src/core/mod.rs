//! Agents, coalitions, partitions and the unilateral deviation semantics
//! shared by every game class.

mod deviation;
mod partition;

use std::cmp::Ordering;

use thiserror::Error;

pub use deviation::{
    apply, check_deviation, enumerate_deviations, first_deviation, is_deviation_of_kind,
    is_stable, DeviationCheck, DeviationMove, StabilityKind, TargetRef,
};
pub use partition::{canonicalize, AgentId, CanonicalForm, Coalition, Partition, MAX_AGENTS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("coalition is empty")]
    EmptyCoalition,
    #[error("agent {0} appears more than once")]
    DuplicateAgent(AgentId),
    #[error("agent {agent} out of range for n = {n}")]
    AgentOutOfRange { agent: AgentId, n: usize },
    #[error("agent {0} is not covered by the partition")]
    MissingAgent(AgentId),
    #[error("{0} agents exceeds the representation cap")]
    TooManyAgents(usize),
    #[error("agent {agent} is not a member of {coalition}")]
    AgentNotInCoalition { agent: AgentId, coalition: String },
    #[error("invalid target for agent {agent}: {reason}")]
    InvalidTarget { agent: AgentId, reason: String },
}

/// Outcome of comparing two coalitions from one agent's point of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preference {
    Prefer,
    Indifferent,
    Disprefer,
}

impl From<Ordering> for Preference {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Preference::Prefer,
            Ordering::Equal => Preference::Indifferent,
            Ordering::Less => Preference::Disprefer,
        }
    }
}

/// Anything that ranks, for each agent, the coalitions containing it.
///
/// `compare_members` returns `Greater` when `agent` strictly prefers `a`.
/// Both slices are sorted and contain `agent`; implementations may assume it.
pub trait Preferences: Sync {
    fn n(&self) -> usize;
    fn compare_members(&self, agent: AgentId, a: &[AgentId], b: &[AgentId]) -> Ordering;

    /// First of `members` that strictly prefers `before` to `after`.
    /// Classes whose preferences depend on a coalition summary override this
    /// to evaluate the summary once.
    fn first_objector(&self, members: &[AgentId], after: &[AgentId], before: &[AgentId]) -> Option<AgentId> {
        members.iter().copied().find(|&j| self.compare_members(j, after, before) == Ordering::Less)
    }
}

/// Checked comparison of two coalitions for `agent`.
pub fn compare<P: Preferences + ?Sized>(
    game: &P,
    agent: AgentId,
    a: &Coalition,
    b: &Coalition,
) -> Result<Preference, CoreError> {
    for c in [a, b] {
        if !c.contains(agent) {
            return Err(CoreError::AgentNotInCoalition { agent, coalition: c.to_string() });
        }
    }
    Ok(game.compare_members(agent, a.members(), b.members()).into())
}
