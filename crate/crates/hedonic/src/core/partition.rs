use std::fmt;

use super::CoreError;

/// Zero-based agent index. Paper instances are 1-based; the catalog subtracts one.
pub type AgentId = usize;

/// Hard ceiling on the agent count of any instance.
pub const MAX_AGENTS: usize = 1_000_000;

/// A nonempty, strictly increasing set of agents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(Vec<AgentId>);

impl Coalition {
    /// Sorts and validates; rejects empty input and duplicates.
    pub fn new(mut members: Vec<AgentId>) -> Result<Self, CoreError> {
        if members.is_empty() {
            return Err(CoreError::EmptyCoalition);
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(CoreError::DuplicateAgent(w[0]));
        }
        Ok(Coalition(members))
    }

    pub fn singleton(agent: AgentId) -> Self {
        Coalition(vec![agent])
    }

    /// Caller guarantees `members` is strictly increasing and nonempty.
    pub(crate) fn from_sorted_unchecked(members: Vec<AgentId>) -> Self {
        debug_assert!(!members.is_empty() && members.windows(2).all(|w| w[0] < w[1]));
        Coalition(members)
    }

    pub fn members(&self) -> &[AgentId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> AgentId {
        self.0[0]
    }

    pub fn contains(&self, agent: AgentId) -> bool {
        self.0.binary_search(&agent).is_ok()
    }

    pub fn into_vec(self) -> Vec<AgentId> {
        self.0
    }

    /// Members plus `agent` (which must be absent).
    pub fn with(&self, agent: AgentId) -> Coalition {
        Coalition(insert_sorted(&self.0, agent))
    }

    /// Members minus `agent`; `None` if nothing is left.
    pub fn without(&self, agent: AgentId) -> Option<Coalition> {
        let v: Vec<AgentId> = self.0.iter().copied().filter(|&a| a != agent).collect();
        (!v.is_empty()).then_some(Coalition(v))
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn insert_sorted(members: &[AgentId], agent: AgentId) -> Vec<AgentId> {
    let pos = members.partition_point(|&a| a < agent);
    let mut v = Vec::with_capacity(members.len() + 1);
    v.extend_from_slice(&members[..pos]);
    v.push(agent);
    v.extend_from_slice(&members[pos..]);
    v
}

/// A partition of `[0, n)` into coalitions.
///
/// Coalitions are kept sorted by their smallest member, which is also the
/// lexicographic order of their member lists, so structural equality is set
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    coalitions: Vec<Coalition>,
    owner: Vec<u32>,
}

impl Partition {
    pub fn new(n: usize, groups: Vec<Vec<AgentId>>) -> Result<Self, CoreError> {
        if n > MAX_AGENTS {
            return Err(CoreError::TooManyAgents(n));
        }
        let mut coalitions = Vec::with_capacity(groups.len());
        let mut seen = vec![false; n];
        for g in groups {
            let c = Coalition::new(g)?;
            for &a in c.members() {
                if a >= n {
                    return Err(CoreError::AgentOutOfRange { agent: a, n });
                }
                if seen[a] {
                    return Err(CoreError::DuplicateAgent(a));
                }
                seen[a] = true;
            }
            coalitions.push(c);
        }
        if let Some(a) = seen.iter().position(|s| !s) {
            return Err(CoreError::MissingAgent(a));
        }
        Ok(Self::from_coalitions_unchecked(n, coalitions))
    }

    pub(crate) fn from_coalitions_unchecked(n: usize, mut coalitions: Vec<Coalition>) -> Self {
        coalitions.sort_unstable_by_key(|c| c.min());
        let mut owner = vec![0u32; n];
        for (k, c) in coalitions.iter().enumerate() {
            for &a in c.members() {
                owner[a] = k as u32;
            }
        }
        Partition { coalitions, owner }
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_coalitions_unchecked(n, (0..n).map(Coalition::singleton).collect())
    }

    pub fn grand(n: usize) -> Self {
        if n == 0 {
            return Self::from_coalitions_unchecked(0, Vec::new());
        }
        Self::from_coalitions_unchecked(n, vec![Coalition((0..n).collect())])
    }

    /// Builds from a restricted-growth string (`labels[i]` = block of agent i).
    pub fn from_labels(labels: &[usize]) -> Self {
        let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut groups: Vec<Vec<AgentId>> = vec![Vec::new(); blocks];
        for (a, &l) in labels.iter().enumerate() {
            groups[l].push(a);
        }
        let coalitions = groups
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(Coalition::from_sorted_unchecked)
            .collect();
        Self::from_coalitions_unchecked(labels.len(), coalitions)
    }

    pub fn n(&self) -> usize {
        self.owner.len()
    }

    pub fn coalitions(&self) -> &[Coalition] {
        &self.coalitions
    }

    pub fn len(&self) -> usize {
        self.coalitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coalitions.is_empty()
    }

    /// Position of `agent`'s coalition in `coalitions()`.
    pub fn index_of(&self, agent: AgentId) -> usize {
        self.owner[agent] as usize
    }

    /// π(i).
    pub fn coalition_of(&self, agent: AgentId) -> &Coalition {
        &self.coalitions[self.owner[agent] as usize]
    }

    pub fn is_singletons(&self) -> bool {
        self.coalitions.len() == self.n()
    }

    pub fn canonical(&self) -> CanonicalForm {
        canonicalize(self)
    }

    pub fn to_vecs(&self) -> Vec<Vec<AgentId>> {
        self.coalitions.iter().map(|c| c.members().to_vec()).collect()
    }

    /// Drops the coalitions at `removed` and adds `added`.
    pub(crate) fn rebuild(&self, removed: &[usize], added: Vec<Coalition>) -> Partition {
        let mut coalitions: Vec<Coalition> = self
            .coalitions
            .iter()
            .enumerate()
            .filter(|(k, _)| !removed.contains(k))
            .map(|(_, c)| c.clone())
            .collect();
        coalitions.extend(added);
        Self::from_coalitions_unchecked(self.n(), coalitions)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.coalitions.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Byte encoding that identifies a partition up to ordering.
///
/// Each member is written as `id + 1` in big-endian u32 and each coalition is
/// closed by a zero word, so byte order agrees with lexicographic order on the
/// sorted member lists (a proper prefix sorts first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Box<[u8]>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonicalize(p: &Partition) -> CanonicalForm {
    let mut out = Vec::with_capacity(4 * (p.n() + p.len()));
    for c in p.coalitions() {
        for &a in c.members() {
            out.extend_from_slice(&((a as u32) + 1).to_be_bytes());
        }
        out.extend_from_slice(&0u32.to_be_bytes());
    }
    CanonicalForm(out.into_boxed_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_partitions() {
        assert!(matches!(Partition::new(3, vec![vec![0, 1]]), Err(CoreError::MissingAgent(2))));
        assert!(matches!(
            Partition::new(2, vec![vec![0, 1], vec![1]]),
            Err(CoreError::DuplicateAgent(1))
        ));
        assert!(matches!(Partition::new(2, vec![vec![0], vec![]]), Err(CoreError::EmptyCoalition)));
        assert!(Partition::new(2, vec![vec![0, 2], vec![1]]).is_err());
    }

    #[test]
    fn coalitions_sorted_by_min() {
        let p = Partition::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p.to_vecs(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(p.coalition_of(3).members(), &[1, 3]);
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let a = Coalition::new(vec![0, 1]).unwrap();
        let b = Coalition::new(vec![0, 1, 2]).unwrap();
        let pa = Partition::from_coalitions_unchecked(3, vec![a, Coalition::singleton(2)]);
        let pb = Partition::from_coalitions_unchecked(3, vec![b]);
        assert!(pa.canonical() < pb.canonical());
    }

    #[test]
    fn labels_roundtrip() {
        let p = Partition::from_labels(&[0, 1, 0, 2, 1]);
        assert_eq!(p.to_vecs(), vec![vec![0, 2], vec![1, 4], vec![3]]);
    }
}
