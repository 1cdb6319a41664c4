use std::cmp::Ordering;
use std::collections::HashSet;

use crate::core::{AgentId, Preferences, MAX_AGENTS};

use super::GameError;

/// Rule-based approvals for families too large to list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ApprovalRule {
    /// C ⊇ `required` and, unless `any_of` is empty, C meets `any_of`.
    Superset { required: Vec<AgentId>, any_of: Vec<AgentId> },
    /// C ⊆ `allowed` and C misses at least one of `missing_one_of`.
    Within { allowed: Vec<AgentId>, missing_one_of: Vec<AgentId> },
}

impl ApprovalRule {
    fn matches(&self, c: &[AgentId]) -> bool {
        let has = |a: &AgentId| c.binary_search(a).is_ok();
        match self {
            ApprovalRule::Superset { required, any_of } => {
                required.iter().all(has) && (any_of.is_empty() || any_of.iter().any(has))
            }
            ApprovalRule::Within { allowed, missing_one_of } => {
                c.iter().all(|a| allowed.binary_search(a).is_ok()) && !missing_one_of.iter().all(has)
            }
        }
    }

    fn normalized(mut self) -> Self {
        match &mut self {
            ApprovalRule::Superset { required, any_of } => {
                required.sort_unstable();
                any_of.sort_unstable();
            }
            ApprovalRule::Within { allowed, missing_one_of } => {
                allowed.sort_unstable();
                missing_one_of.sort_unstable();
            }
        }
        self
    }
}

/// Dichotomous hedonic game: each agent approves some coalitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomousGame {
    n: usize,
    approvals: Vec<HashSet<Vec<AgentId>>>,
    rules: Vec<Vec<ApprovalRule>>,
}

impl DichotomousGame {
    /// `approvals[i]` lists the coalitions agent i approves; each must contain i.
    pub fn new(approvals: Vec<Vec<Vec<AgentId>>>) -> Result<Self, GameError> {
        let n = approvals.len();
        Self::with_rules(approvals, vec![Vec::new(); n])
    }

    pub fn with_rules(approvals: Vec<Vec<Vec<AgentId>>>, rules: Vec<Vec<ApprovalRule>>) -> Result<Self, GameError> {
        let n = approvals.len();
        if n > MAX_AGENTS || rules.len() != n {
            return Err(GameError::AgentCount { expected: n, got: rules.len() });
        }
        let mut sets = Vec::with_capacity(n);
        for (i, list) in approvals.into_iter().enumerate() {
            let mut set = HashSet::with_capacity(list.len());
            for mut c in list {
                c.sort_unstable();
                c.dedup();
                if c.binary_search(&i).is_err() {
                    return Err(GameError::ApprovalWithoutOwner { agent: i });
                }
                if let Some(&a) = c.iter().find(|&&a| a >= n) {
                    return Err(GameError::DomainViolation(format!("agent {a} out of range")));
                }
                set.insert(c);
            }
            sets.push(set);
        }
        let rules = rules.into_iter().map(|rs| rs.into_iter().map(ApprovalRule::normalized).collect()).collect();
        Ok(DichotomousGame { n, approvals: sets, rules })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Explicit approvals of `agent`, sorted for determinism.
    pub fn approved(&self, agent: AgentId) -> Vec<Vec<AgentId>> {
        let mut v: Vec<_> = self.approvals[agent].iter().cloned().collect();
        v.sort();
        v
    }

    pub fn rules(&self, agent: AgentId) -> &[ApprovalRule] {
        &self.rules[agent]
    }

    pub fn has_rules(&self) -> bool {
        self.rules.iter().any(|r| !r.is_empty())
    }

    /// Whether `agent` approves the sorted coalition `c`.
    pub fn approves(&self, agent: AgentId, c: &[AgentId]) -> bool {
        self.approvals[agent].contains(c) || self.rules[agent].iter().any(|r| r.matches(c))
    }

    /// Every approved coalition is approved by all of its members.
    ///
    /// Rule-based approvals are expanded by enumerating coalitions, which is
    /// only attempted up to 20 agents.
    pub fn is_symmetric(&self) -> Result<bool, GameError> {
        let explicit = (0..self.n)
            .all(|i| self.approvals[i].iter().all(|c| c.iter().all(|&j| self.approves(j, c))));
        if !explicit || !self.has_rules() {
            return Ok(explicit);
        }
        if self.n > 20 {
            return Err(GameError::TooLarge("rule-based symmetry check needs n <= 20".into()));
        }
        for mask in 1u32..(1u32 << self.n) {
            let c: Vec<AgentId> = (0..self.n).filter(|&a| mask >> a & 1 == 1).collect();
            let votes: Vec<bool> = c.iter().map(|&a| self.approves(a, &c)).collect();
            if votes.iter().any(|&v| v) && !votes.iter().all(|&v| v) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Preferences for DichotomousGame {
    fn n(&self) -> usize {
        self.n
    }

    fn compare_members(&self, agent: AgentId, a: &[AgentId], b: &[AgentId]) -> Ordering {
        self.approves(agent, a).cmp(&self.approves(agent, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_approvals() {
        let g = DichotomousGame::new(vec![vec![vec![1, 0]], vec![vec![1, 2]], vec![vec![0, 2]]]).unwrap();
        assert!(g.approves(0, &[0, 1]));
        assert!(!g.approves(1, &[0, 1]));
        assert!(!g.is_symmetric().unwrap());
        assert!(DichotomousGame::new(vec![vec![vec![1]], vec![]]).is_err());
        assert!(DichotomousGame::new(vec![vec![]; 3]).unwrap().is_symmetric().unwrap());
    }

    #[test]
    fn rules_match() {
        let sup = ApprovalRule::Superset { required: vec![3], any_of: vec![1, 2] }.normalized();
        assert!(sup.matches(&[0, 2, 3]));
        assert!(!sup.matches(&[0, 3]));
        let within = ApprovalRule::Within { allowed: vec![0, 1, 2, 3], missing_one_of: vec![2, 3] }.normalized();
        assert!(within.matches(&[0, 1, 2]));
        assert!(!within.matches(&[0, 2, 3]));
        assert!(!within.matches(&[0, 4]));
    }

    #[test]
    fn rule_symmetry_by_enumeration() {
        let grand = ApprovalRule::Superset { required: vec![0, 1, 2], any_of: vec![] };
        let g = DichotomousGame::with_rules(vec![vec![]; 3], vec![vec![grand]; 3]).unwrap();
        assert!(g.is_symmetric().unwrap());
    }
}
