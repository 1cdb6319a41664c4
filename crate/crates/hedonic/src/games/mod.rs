//! The four game classes and their restriction checkers.

mod anonymous;
mod dichotomous;
mod diversity;
mod fractional;
mod order;
mod rational;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::core::{AgentId, Coalition, CoreError, Preferences};

pub use anonymous::AnonymousGame;
pub use dichotomous::{ApprovalRule, DichotomousGame};
pub use diversity::{hdg_ratio, is_homogeneous, ratio_domain, Color, DiversityGame, RatioKey};
pub use fractional::{topological_order, FhgClass, FractionalGame};
pub use order::{single_peaked_check, AxisSpec, SpCheck, Tail, WeakOrder};
pub use rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("malformed order: {0}")]
    MalformedOrder(String),
    #[error("not single-peaked: {0}")]
    NotSinglePeaked(String),
    #[error("axis and domain differ: {0}")]
    AxisDomainMismatch(String),
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("expected {expected} agents, got {got}")]
    AgentCount { expected: usize, got: usize },
    #[error("acyclicity is only defined for simple asymmetric games")]
    AcyclicQueriedOnNonSimpleAsymmetric,
    #[error("agent {agent} approves a coalition it is not in")]
    ApprovalWithoutOwner { agent: AgentId },
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("wrong game class: expected {0}")]
    WrongClass(&'static str),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// A game of any of the four classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HedonicGame {
    Anonymous(AnonymousGame),
    Diversity(DiversityGame),
    Fractional(FractionalGame),
    Dichotomous(DichotomousGame),
}

impl HedonicGame {
    pub fn n(&self) -> usize {
        match self {
            HedonicGame::Anonymous(g) => g.n(),
            HedonicGame::Diversity(g) => g.n(),
            HedonicGame::Fractional(g) => g.n(),
            HedonicGame::Dichotomous(g) => g.n(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            HedonicGame::Anonymous(_) => "ahg",
            HedonicGame::Diversity(_) => "hdg",
            HedonicGame::Fractional(_) => "fhg",
            HedonicGame::Dichotomous(_) => "dhg",
        }
    }

    pub fn as_anonymous(&self) -> Option<&AnonymousGame> {
        match self {
            HedonicGame::Anonymous(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_diversity(&self) -> Option<&DiversityGame> {
        match self {
            HedonicGame::Diversity(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_fractional(&self) -> Option<&FractionalGame> {
        match self {
            HedonicGame::Fractional(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_dichotomous(&self) -> Option<&DichotomousGame> {
        match self {
            HedonicGame::Dichotomous(g) => Some(g),
            _ => None,
        }
    }

    /// Dense type labels: agents with equal labels are interchangeable.
    /// Defined for anonymous (profile) and diversity (profile, color) games.
    pub fn agent_types(&self) -> Option<Vec<usize>> {
        let raw: Vec<(usize, u8)> = match self {
            HedonicGame::Anonymous(g) => (0..g.n()).map(|a| (g.profile_of(a), 0)).collect(),
            HedonicGame::Diversity(g) => {
                (0..g.n()).map(|a| (g.profile_of(a), (g.color(a) == Color::Red) as u8)).collect()
            }
            _ => return None,
        };
        let mut ids: HashMap<(usize, u8), usize> = HashMap::new();
        Some(raw.into_iter().map(|t| { let k = ids.len(); *ids.entry(t).or_insert(k) }).collect())
    }
}

impl Preferences for HedonicGame {
    fn n(&self) -> usize {
        HedonicGame::n(self)
    }

    fn compare_members(&self, agent: AgentId, a: &[AgentId], b: &[AgentId]) -> Ordering {
        match self {
            HedonicGame::Anonymous(g) => g.compare_members(agent, a, b),
            HedonicGame::Diversity(g) => g.compare_members(agent, a, b),
            HedonicGame::Fractional(g) => g.compare_members(agent, a, b),
            HedonicGame::Dichotomous(g) => g.compare_members(agent, a, b),
        }
    }

    fn first_objector(&self, members: &[AgentId], after: &[AgentId], before: &[AgentId]) -> Option<AgentId> {
        match self {
            HedonicGame::Anonymous(g) => g.first_objector(members, after, before),
            HedonicGame::Diversity(g) => g.first_objector(members, after, before),
            HedonicGame::Fractional(g) => g.first_objector(members, after, before),
            HedonicGame::Dichotomous(g) => g.first_objector(members, after, before),
        }
    }
}

impl From<AnonymousGame> for HedonicGame {
    fn from(g: AnonymousGame) -> Self {
        HedonicGame::Anonymous(g)
    }
}

impl From<DiversityGame> for HedonicGame {
    fn from(g: DiversityGame) -> Self {
        HedonicGame::Diversity(g)
    }
}

impl From<FractionalGame> for HedonicGame {
    fn from(g: FractionalGame) -> Self {
        HedonicGame::Fractional(g)
    }
}

impl From<DichotomousGame> for HedonicGame {
    fn from(g: DichotomousGame) -> Self {
        HedonicGame::Dichotomous(g)
    }
}

/// Index of `size`'s indifference class for `agent`.
pub fn ahg_rank(game: &AnonymousGame, agent: AgentId, size: usize) -> Result<usize, GameError> {
    game.ahg_rank(agent, size)
}

/// Exact average utility of `agent` in `coalition`.
pub fn fhg_utility(game: &FractionalGame, agent: AgentId, coalition: &Coalition) -> Result<Rational, GameError> {
    if !coalition.contains(agent) {
        return Err(CoreError::AgentNotInCoalition { agent, coalition: coalition.to_string() }.into());
    }
    Ok(game.utility(agent, coalition.members()))
}

pub fn classify_fhg(game: &FractionalGame) -> FhgClass {
    game.classify()
}

/// Acyclicity of the digraph of a simple asymmetric game.
pub fn fhg_is_acyclic(game: &FractionalGame) -> Result<bool, GameError> {
    game.classify().acyclic.ok_or(GameError::AcyclicQueriedOnNonSimpleAsymmetric)
}

pub fn dhg_is_symmetric(game: &DichotomousGame) -> Result<bool, GameError> {
    game.is_symmetric()
}

/// Deduplicates equal orders into shared profiles.
pub(crate) fn dedup_profiles<K: Ord + Hash + Clone>(orders: Vec<WeakOrder<K>>) -> (Vec<WeakOrder<K>>, Vec<usize>) {
    let mut profiles: Vec<WeakOrder<K>> = Vec::new();
    let mut profile_of = Vec::with_capacity(orders.len());
    for w in orders {
        match profiles.iter().position(|p| *p == w) {
            Some(k) => profile_of.push(k),
            None => {
                profile_of.push(profiles.len());
                profiles.push(w);
            }
        }
    }
    (profiles, profile_of)
}
