use std::cmp::Ordering;

use crate::core::{AgentId, Preferences, MAX_AGENTS};

use super::order::{single_peaked_check, AxisSpec, Tail, WeakOrder};
use super::{dedup_profiles, GameError};

/// Anonymous hedonic game: each agent ranks coalition sizes.
///
/// Agents with identical orders share one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnonymousGame {
    n: usize,
    profiles: Vec<WeakOrder<usize>>,
    profile_of: Vec<usize>,
}

impl AnonymousGame {
    pub fn new(n: usize, profiles: Vec<WeakOrder<usize>>, profile_of: Vec<usize>) -> Result<Self, GameError> {
        if n > MAX_AGENTS || profile_of.len() != n {
            return Err(GameError::AgentCount { expected: n, got: profile_of.len() });
        }
        if let Some(&bad) = profile_of.iter().find(|&&p| p >= profiles.len()) {
            return Err(GameError::DomainViolation(format!("profile {bad} does not exist")));
        }
        for w in &profiles {
            if let Some(k) = w.classes().iter().flatten().find(|&&k| k == 0 || k > n) {
                return Err(GameError::DomainViolation(format!("size {k} outside 1..={n}")));
            }
        }
        Ok(AnonymousGame { n, profiles, profile_of })
    }

    /// One order per agent; equal orders are shared.
    pub fn from_orders(orders: Vec<WeakOrder<usize>>) -> Result<Self, GameError> {
        let n = orders.len();
        let (profiles, profile_of) = dedup_profiles(orders);
        Self::new(n, profiles, profile_of)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self, agent: AgentId) -> &WeakOrder<usize> {
        &self.profiles[self.profile_of[agent]]
    }

    pub fn profiles(&self) -> &[WeakOrder<usize>] {
        &self.profiles
    }

    pub fn profile_of(&self, agent: AgentId) -> usize {
        self.profile_of[agent]
    }

    pub fn domain(&self) -> Vec<usize> {
        (1..=self.n).collect()
    }

    /// Index of `size`'s indifference class in `agent`'s order over 1..=n.
    pub fn ahg_rank(&self, agent: AgentId, size: usize) -> Result<usize, GameError> {
        if agent >= self.n {
            return Err(GameError::DomainViolation(format!("agent {agent} out of range")));
        }
        if size == 0 || size > self.n {
            return Err(GameError::DomainViolation(format!("size {size} outside 1..={}", self.n)));
        }
        let w = self.order(agent);
        if let Some(r) = w.class_of(&size) {
            return Ok(r);
        }
        let base = w.classes().len();
        let unlisted = |range: std::ops::RangeInclusive<usize>| {
            range.filter(|s| w.class_of(s).is_none()).count()
        };
        Ok(match w.tail() {
            Tail::Bottom => base,
            Tail::Ascending => base + unlisted(1..=size - 1),
            Tail::Descending => base + unlisted(size + 1..=self.n),
        })
    }

    pub fn is_strict(&self) -> bool {
        let d = self.domain();
        self.profiles.iter().all(|w| w.is_strict_on(&d))
    }

    /// Single-peaked along the natural order of sizes, for every agent.
    pub fn is_natural_sp(&self) -> bool {
        let d = self.domain();
        self.profiles
            .iter()
            .all(|w| single_peaked_check(w, &AxisSpec::Natural, &d).is_ok_and(|c| c.ok))
    }

    /// Peak of `agent` on the natural axis.
    pub fn peak(&self, agent: AgentId) -> Option<usize> {
        single_peaked_check(self.order(agent), &AxisSpec::Natural, &self.domain())
            .ok()
            .and_then(|c| c.peak)
    }
}

impl Preferences for AnonymousGame {
    fn n(&self) -> usize {
        self.n
    }

    fn compare_members(&self, agent: AgentId, a: &[AgentId], b: &[AgentId]) -> Ordering {
        self.order(agent).cmp_keys(&a.len(), &b.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_with_tails() {
        let w = WeakOrder::strict(vec![2, 3], Tail::Ascending).unwrap();
        let g = AnonymousGame::from_orders(vec![w.clone(); 5]).unwrap();
        assert_eq!(g.profiles().len(), 1);
        assert_eq!(g.ahg_rank(0, 2).unwrap(), 0);
        assert_eq!(g.ahg_rank(0, 1).unwrap(), 2);
        assert_eq!(g.ahg_rank(0, 4).unwrap(), 3);
        assert_eq!(g.ahg_rank(0, 5).unwrap(), 4);
        assert!(g.ahg_rank(0, 6).is_err());
        assert!(g.is_strict());
        assert!(g.is_natural_sp());
        assert_eq!(g.peak(0), Some(2));
        let v = WeakOrder::strict(vec![3, 1], Tail::Ascending).unwrap();
        assert!(!AnonymousGame::from_orders(vec![v; 5]).unwrap().is_natural_sp());
    }

    #[test]
    fn rejects_out_of_domain_sizes() {
        let w = WeakOrder::strict(vec![4], Tail::Bottom).unwrap();
        assert!(AnonymousGame::from_orders(vec![w; 3]).is_err());
    }
}
