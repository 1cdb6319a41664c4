use crate::core::{DeviationMove, Partition};
use crate::games::HedonicGame;

use super::monitor::{Monitor, MonitorReading, ReadingValue};

/// Number of agent pairs sharing a coalition: Σ |C|(|C|−1)/2.
pub fn gamma(p: &Partition) -> u64 {
    p.coalitions().iter().map(|c| (c.len() * (c.len() - 1) / 2) as u64).sum()
}

/// Edges inside coalitions of a simple symmetric game started from
/// singletons. Those coalitions are cliques, so this equals `gamma`.
pub fn fhg_clique_edges(p: &Partition) -> u64 {
    gamma(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Anonymous games: R-moves gain at most n−1, L-moves lose at least 1.
    RlAccounting,
    /// Simple symmetric fractional games from singletons: strictly up.
    StrictIncrease,
    Plain,
}

pub struct GammaMonitor {
    n: usize,
    base: Mode,
    mode: Mode,
    value: u64,
}

impl GammaMonitor {
    pub fn new(game: &HedonicGame) -> Self {
        let base = match game {
            HedonicGame::Anonymous(_) => Mode::RlAccounting,
            HedonicGame::Fractional(f) => {
                let c = f.classify();
                if c.simple && c.symmetric {
                    Mode::StrictIncrease
                } else {
                    Mode::Plain
                }
            }
            _ => Mode::Plain,
        };
        GammaMonitor { n: game.n(), base, mode: base, value: 0 }
    }
}

impl Monitor for GammaMonitor {
    fn name(&self) -> &'static str {
        "gamma"
    }

    fn start(&mut self, start: &Partition) -> MonitorReading {
        self.mode = match self.base {
            Mode::StrictIncrease if !start.is_singletons() => Mode::Plain,
            m => m,
        };
        self.value = gamma(start);
        MonitorReading::new("gamma", ReadingValue::Int(self.value as i64), Vec::new())
    }

    fn observe(&mut self, pre: &Partition, mv: &DeviationMove, post: &Partition) -> MonitorReading {
        let next = gamma(post);
        let delta = next as i64 - self.value as i64;
        let mut violations = Vec::new();
        match self.mode {
            Mode::RlAccounting => {
                let old = pre.coalition_of(mv.agent).len();
                let new = post.coalition_of(mv.agent).len();
                if new > old {
                    if delta > self.n as i64 - 1 {
                        violations.push(format!("R-move raised gamma by {delta} > n-1"));
                    }
                } else if delta > -1 {
                    violations.push(format!("L-move changed gamma by {delta}, expected <= -1"));
                }
            }
            Mode::StrictIncrease => {
                if delta <= 0 {
                    violations.push(format!("gamma did not increase (delta {delta})"));
                }
            }
            Mode::Plain => {}
        }
        self.value = next;
        MonitorReading::new("gamma", ReadingValue::Int(next as i64), violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_counts() {
        assert_eq!(gamma(&Partition::singletons(7)), 0);
        assert_eq!(gamma(&Partition::grand(7)), 21);
        let p = Partition::new(7, vec![vec![0, 1], vec![2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(gamma(&p), 5);
        assert_eq!(fhg_clique_edges(&p), 5);
    }
}
