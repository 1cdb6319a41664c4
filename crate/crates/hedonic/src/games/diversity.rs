use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::Ratio;

use crate::core::{AgentId, Coalition, Preferences, MAX_AGENTS};

use super::order::{single_peaked_check, AxisSpec, WeakOrder};
use super::rational::Rational;
use super::{dedup_profiles, GameError};

/// Key type of diversity orders: the red fraction of a coalition.
pub type RatioKey = Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

/// Hedonic diversity game: agents are red or blue and rank red fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiversityGame {
    colors: Vec<Color>,
    profiles: Vec<WeakOrder<RatioKey>>,
    profile_of: Vec<usize>,
}

impl DiversityGame {
    pub fn new(
        colors: Vec<Color>,
        profiles: Vec<WeakOrder<RatioKey>>,
        profile_of: Vec<usize>,
    ) -> Result<Self, GameError> {
        let n = colors.len();
        if n > MAX_AGENTS || profile_of.len() != n {
            return Err(GameError::AgentCount { expected: n, got: profile_of.len() });
        }
        if let Some(&bad) = profile_of.iter().find(|&&p| p >= profiles.len()) {
            return Err(GameError::DomainViolation(format!("profile {bad} does not exist")));
        }
        for w in &profiles {
            if let Some(k) = w.classes().iter().flatten().find(|k| k > &&Ratio::from_integer(1)) {
                return Err(GameError::DomainViolation(format!("ratio {k} above 1")));
            }
        }
        Ok(DiversityGame { colors, profiles, profile_of })
    }

    pub fn from_orders(colors: Vec<Color>, orders: Vec<WeakOrder<RatioKey>>) -> Result<Self, GameError> {
        let (profiles, profile_of) = dedup_profiles(orders);
        Self::new(colors, profiles, profile_of)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, agent: AgentId) -> Color {
        self.colors[agent]
    }

    pub fn red_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Red).count()
    }

    pub fn order(&self, agent: AgentId) -> &WeakOrder<RatioKey> {
        &self.profiles[self.profile_of[agent]]
    }

    pub fn profiles(&self) -> &[WeakOrder<RatioKey>] {
        &self.profiles
    }

    pub fn profile_of(&self, agent: AgentId) -> usize {
        self.profile_of[agent]
    }

    pub fn ratio_key(&self, members: &[AgentId]) -> RatioKey {
        let red = members.iter().filter(|&&a| self.colors[a] == Color::Red).count();
        Ratio::new(red as u64, members.len() as u64)
    }

    /// All p/q with 0 ≤ p ≤ |R|, 1 ≤ q ≤ n and p ≤ q, ascending.
    pub fn ratio_domain(&self) -> Vec<RatioKey> {
        ratio_domain(self.red_count(), self.n())
    }

    pub fn is_strict(&self) -> bool {
        let d = self.ratio_domain();
        self.profiles.iter().all(|w| w.is_strict_on(&d))
    }

    pub fn is_natural_sp(&self) -> bool {
        let d = self.ratio_domain();
        self.profiles
            .iter()
            .all(|w| single_peaked_check(w, &AxisSpec::Natural, &d).is_ok_and(|c| c.ok))
    }
}

pub fn ratio_domain(reds: usize, n: usize) -> Vec<RatioKey> {
    let mut d: Vec<RatioKey> = (1..=n as u64)
        .flat_map(|q| (0..=q.min(reds as u64)).map(move |p| Ratio::new(p, q)))
        .collect();
    d.sort();
    d.dedup();
    d
}

/// Red fraction of `coalition`, exact.
pub fn hdg_ratio(coalition: &[AgentId], colors: &[Color]) -> Result<Rational, GameError> {
    if coalition.is_empty() {
        return Err(GameError::DomainViolation("empty coalition".into()));
    }
    if let Some(&a) = coalition.iter().find(|&&a| a >= colors.len()) {
        return Err(GameError::DomainViolation(format!("agent {a} has no color")));
    }
    let red = coalition.iter().filter(|&&a| colors[a] == Color::Red).count();
    Ok(Rational::from(Ratio::new(red as u64, coalition.len() as u64)))
}

/// Whether every member has the same color.
pub fn is_homogeneous(coalition: &Coalition, colors: &[Color]) -> bool {
    let first = colors[coalition.min()];
    coalition.members().iter().all(|&a| colors[a] == first)
}

impl Preferences for DiversityGame {
    fn n(&self) -> usize {
        self.colors.len()
    }

    fn compare_members(&self, agent: AgentId, a: &[AgentId], b: &[AgentId]) -> Ordering {
        self.order(agent).cmp_keys(&self.ratio_key(a), &self.ratio_key(b))
    }

    fn first_objector(&self, members: &[AgentId], after: &[AgentId], before: &[AgentId]) -> Option<AgentId> {
        if members.is_empty() {
            return None;
        }
        let (ka, kb) = (self.ratio_key(after), self.ratio_key(before));
        // verdict per profile, filled lazily
        let mut objects: HashMap<usize, bool> = HashMap::new();
        members.iter().copied().find(|&j| {
            let p = self.profile_of[j];
            *objects.entry(p).or_insert_with(|| self.profiles[p].cmp_keys(&ka, &kb) == Ordering::Less)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::*;

    #[test]
    fn ratios_exact() {
        let colors = [Red, Blue, Red, Red, Blue, Blue, Blue, Blue];
        assert_eq!(hdg_ratio(&[0, 1], &colors).unwrap(), Rational::new(1, 2).unwrap());
        assert_eq!(hdg_ratio(&[0, 1, 2, 4, 5, 6, 7, 3], &colors).unwrap().to_string(), "3/8");
        assert!(hdg_ratio(&[], &colors).is_err());
    }

    #[test]
    fn homogeneity() {
        let colors = [Red, Red, Blue];
        assert!(is_homogeneous(&Coalition::new(vec![0, 1]).unwrap(), &colors));
        assert!(!is_homogeneous(&Coalition::new(vec![1, 2]).unwrap(), &colors));
    }

    #[test]
    fn domain_counts() {
        // n = 3, one red: 0/1, 1/1, 1/2, 1/3 plus 0 duplicates
        let d = ratio_domain(1, 3);
        assert_eq!(d.len(), 4);
        assert_eq!(ratio_domain(0, 4), vec![Ratio::from_integer(0)]);
    }

    #[test]
    fn cis_from_singleton_has_no_objector() {
        use super::super::order::Tail;
        use crate::core::{check_deviation, DeviationCheck, DeviationMove, Partition, StabilityKind};
        let w = WeakOrder::strict(vec![Ratio::new(1, 2), Ratio::from_integer(0)], Tail::Bottom).unwrap();
        let g = DiversityGame::new(vec![Red, Blue], vec![w], vec![0, 0]).unwrap();
        let p = Partition::new(2, vec![vec![0], vec![1]]).unwrap();
        let mv = DeviationMove::join(0, Coalition::new(vec![1]).unwrap());
        assert_eq!(check_deviation(&g, &p, &mv, StabilityKind::CIS).unwrap(), DeviationCheck::Valid);
    }
}
