//! Exhaustive decision procedures at desk scale: IS existence, reachability
//! of an IS partition and convergence of every IS sequence.

mod enumerate;
mod existence;
mod reach;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::core::{CoreError, DeviationMove, Partition};
use crate::games::GameError;

pub use enumerate::{bell_number, enumerate_partitions, enumerate_partitions_capped, Partitions, DEFAULT_CAP};
pub use existence::{exists_is_partition, fhg_valid_coalitions, Strategy};
pub use reach::{all_paths_converge, exists_path_to_is};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("{n} agents exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("strategy {strategy} needs {needs}")]
    WrongStrategy { strategy: &'static str, needs: &'static str },
    #[error("budget fields must be positive")]
    InvalidBudget,
    #[error("partition has {partition} agents, game has {game}")]
    SizeMismatch { game: usize, partition: usize },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Partitions visited (existence) or distinct states stored (reachability).
    pub max_states: u64,
    pub max_seconds: u64,
    /// Worker threads; ignored without the `parallel` feature.
    pub parallelism: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: 50_000_000,
            max_seconds: 600,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SearchBudget {
    pub fn new(max_states: u64, max_seconds: u64, parallelism: usize) -> Result<Self, SearchError> {
        let b = SearchBudget { max_states, max_seconds, parallelism };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_states == 0 || self.max_seconds == 0 || self.parallelism == 0 {
            return Err(SearchError::InvalidBudget);
        }
        Ok(())
    }

    pub fn with_seconds(mut self, s: u64) -> Self {
        self.max_seconds = s;
        self
    }

    pub fn with_states(mut self, s: u64) -> Self {
        self.max_states = s;
        self
    }

    pub fn with_parallelism(mut self, p: usize) -> Self {
        self.parallelism = p;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExistenceAnswer {
    /// The IS witness with the smallest canonical encoding among those seen.
    Exists(Partition),
    /// Enumeration completed; `checked` candidates were examined.
    None { checked: u64 },
    BudgetExhausted { checked: u64 },
}

impl ExistenceAnswer {
    pub fn witness(&self) -> Option<&Partition> {
        match self {
            ExistenceAnswer::Exists(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, ExistenceAnswer::None { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReachabilityAnswer {
    /// A shortest move list from the start to an IS partition `end`.
    PathFound { moves: Vec<DeviationMove>, end: Partition },
    /// Every reachable state was explored and none is IS.
    NoPath { explored: u64 },
    /// The reachable deviation graph is acyclic.
    ConvergesAlways { explored: u64 },
    /// `prefix` leads from the start into a cycle; `cycle` returns to the
    /// state where it began.
    CycleReachable { prefix: Vec<DeviationMove>, cycle: Vec<DeviationMove> },
    BudgetExhausted { explored: u64 },
}

impl ReachabilityAnswer {
    pub fn label(&self) -> &'static str {
        match self {
            ReachabilityAnswer::PathFound { .. } => "path-found",
            ReachabilityAnswer::NoPath { .. } => "no-path",
            ReachabilityAnswer::ConvergesAlways { .. } => "converges-always",
            ReachabilityAnswer::CycleReachable { .. } => "cycle-reachable",
            ReachabilityAnswer::BudgetExhausted { .. } => "budget-exhausted",
        }
    }
}

/// Shared stop condition for workers.
pub(crate) struct Meter {
    start: Instant,
    limit: Duration,
    max_states: u64,
    count: AtomicU64,
    stopped: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        Meter {
            start: Instant::now(),
            limit: Duration::from_secs(budget.max_seconds),
            max_states: budget.max_states,
            count: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
        }
    }

    /// Records `k` more states; returns false once the budget is spent.
    pub(crate) fn tick(&self, k: u64) -> bool {
        let before = self.count.fetch_add(k, Ordering::Relaxed);
        let over = before + k > self.max_states
            || ((before >> 10) != ((before + k) >> 10) && self.start.elapsed() > self.limit);
        if over {
            self.stopped.store(true, Ordering::Relaxed);
        }
        !self.stopped()
    }

    pub(crate) fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    pub(crate) fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}

fn check_size(game_n: usize, p: &Partition) -> Result<(), SearchError> {
    if game_n != p.n() {
        return Err(SearchError::SizeMismatch { game: game_n, partition: p.n() });
    }
    Ok(())
}
