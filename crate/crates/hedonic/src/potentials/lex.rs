use std::cmp::Ordering;

use crate::core::{AgentId, DeviationMove, Partition};
use crate::games::{topological_order, FractionalGame};

use super::monitor::{Monitor, MonitorReading, ReadingValue};
use super::PotentialError;

/// The pair of vectors ordered lexicographically for acyclic simple
/// asymmetric games.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexPotential {
    /// Highest σ per coalition, sorted decreasing.
    pub vsigma: Vec<u64>,
    /// Coalition sizes, sorted increasing.
    pub wvec: Vec<u64>,
}

/// `sigma[v]` is the 1-based topological score of agent v.
pub fn lex_potential(p: &Partition, sigma: &[u64]) -> LexPotential {
    let mut vsigma: Vec<u64> =
        p.coalitions().iter().map(|c| c.members().iter().map(|&a| sigma[a]).max().unwrap_or(0)).collect();
    vsigma.sort_unstable_by(|a, b| b.cmp(a));
    let mut wvec: Vec<u64> = p.coalitions().iter().map(|c| c.len() as u64).collect();
    wvec.sort_unstable();
    LexPotential { vsigma, wvec }
}

/// Lexicographic order where a strict extension of an equal prefix is
/// greater. `Greater` means `a >_lex b`.
pub fn lex_compare(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Checks that `sigma` is a bijection onto 1..=n respecting every arc.
pub fn validate_sigma(n: usize, arcs: &[(AgentId, AgentId)], sigma: &[u64]) -> Result<(), PotentialError> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(PotentialError::NotTopological);
    }
    for &s in sigma {
        if s == 0 || s as usize > n || std::mem::replace(&mut seen[s as usize - 1], true) {
            return Err(PotentialError::NotTopological);
        }
    }
    if arcs.iter().any(|&(v, w)| sigma[v] >= sigma[w]) {
        return Err(PotentialError::NotTopological);
    }
    Ok(())
}

/// The smallest-index-first topological scores of an acyclic game.
pub fn default_sigma(game: &FractionalGame) -> Result<Vec<u64>, PotentialError> {
    let class = game.classify();
    if class.acyclic != Some(true) {
        return Err(PotentialError::PreconditionViolated("lex needs an acyclic simple asymmetric game".into()));
    }
    let order = topological_order(game.n(), &game.arcs()).ok_or(PotentialError::NotTopological)?;
    let mut sigma = vec![0u64; game.n()];
    for (k, &v) in order.iter().enumerate() {
        sigma[v] = k as u64 + 1;
    }
    Ok(sigma)
}

pub struct LexMonitor {
    sigma: Vec<u64>,
    last: Option<LexPotential>,
}

impl LexMonitor {
    pub fn new(game: &FractionalGame) -> Result<Self, PotentialError> {
        Ok(LexMonitor { sigma: default_sigma(game)?, last: None })
    }

    pub fn with_sigma(game: &FractionalGame, sigma: Vec<u64>) -> Result<Self, PotentialError> {
        validate_sigma(game.n(), &game.arcs(), &sigma)?;
        Ok(LexMonitor { sigma, last: None })
    }

    fn reading(lp: &LexPotential, violations: Vec<String>) -> MonitorReading {
        let to_i = |v: &[u64]| v.iter().map(|&x| x as i64).collect();
        MonitorReading::new("lex", ReadingValue::Pair(to_i(&lp.vsigma), to_i(&lp.wvec)), violations)
    }
}

impl Monitor for LexMonitor {
    fn name(&self) -> &'static str {
        "lex"
    }

    fn start(&mut self, start: &Partition) -> MonitorReading {
        let lp = lex_potential(start, &self.sigma);
        let r = Self::reading(&lp, Vec::new());
        self.last = Some(lp);
        r
    }

    fn observe(&mut self, _pre: &Partition, _mv: &DeviationMove, post: &Partition) -> MonitorReading {
        let lp = lex_potential(post, &self.sigma);
        let mut violations = Vec::new();
        if let Some(prev) = &self.last {
            let ok = match lex_compare(&lp.vsigma, &prev.vsigma) {
                Ordering::Less => true,
                Ordering::Equal => lex_compare(&lp.wvec, &prev.wvec) == Ordering::Greater,
                Ordering::Greater => false,
            };
            if !ok {
                violations.push(format!(
                    "(vsigma, w) did not decrease: {:?}/{:?} -> {:?}/{:?}",
                    prev.vsigma, prev.wvec, lp.vsigma, lp.wvec
                ));
            }
        }
        let r = Self::reading(&lp, violations);
        self.last = Some(lp);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_singletons() {
        let lp = lex_potential(&Partition::singletons(3), &[1, 2, 3]);
        assert_eq!(lp.vsigma, vec![3, 2, 1]);
        assert_eq!(lp.wvec, vec![1, 1, 1]);
    }

    #[test]
    fn comparison() {
        assert_eq!(lex_compare(&[3, 2], &[3, 1, 4]), Ordering::Greater);
        assert_eq!(lex_compare(&[3, 2, 1], &[3, 2]), Ordering::Greater);
        assert_eq!(lex_compare(&[3, 2], &[3, 2]), Ordering::Equal);
        assert_eq!(lex_compare(&[], &[1]), Ordering::Less);
    }

    #[test]
    fn sigma_validation() {
        assert!(validate_sigma(3, &[(0, 1)], &[1, 2, 3]).is_ok());
        assert!(validate_sigma(3, &[(1, 0)], &[1, 2, 3]).is_err());
        assert!(validate_sigma(3, &[], &[1, 1, 3]).is_err());
    }
}
