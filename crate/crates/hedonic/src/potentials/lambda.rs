//! History-dependent potential for strict, naturally single-peaked
//! anonymous games. Agents and live coalitions carry values; coalitions
//! also remember the last agent that entered them.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::core::{apply, AgentId, Coalition, DeviationMove, Partition, TargetRef};
use crate::games::AnonymousGame;

use super::monitor::{Monitor, MonitorReading, ReadingValue};
use super::PotentialError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoalitionEntry {
    pub value: usize,
    /// `None` is ⊥.
    pub last: Option<AgentId>,
}

/// Which update rule handled the abandoned coalition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambdaCase {
    /// The deviator was alone; nothing is abandoned.
    NoAbandoned,
    /// L-move.
    LMove,
    /// Every abandoned agent still has value 0.
    AllZero,
    /// The deviator was the last entrant.
    DeviatorWasLast,
    /// No last entrant recorded.
    NoLast,
    /// The last entrant's value reached |D|.
    Threshold,
    /// The last entrant's value is below |D|.
    BelowThreshold,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaState {
    agent_values: Vec<usize>,
    coalitions: HashMap<Coalition, CoalitionEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaStep {
    pub r_move: bool,
    pub case: LambdaCase,
}

impl LambdaState {
    pub fn agent_value(&self, j: AgentId) -> usize {
        self.agent_values[j]
    }

    pub fn coalition_entry(&self, c: &Coalition) -> Option<CoalitionEntry> {
        self.coalitions.get(c).copied()
    }

    /// Λ = Σ_j v_j + Σ_C v_C.
    pub fn potential(&self) -> u64 {
        let a: usize = self.agent_values.iter().sum();
        let c: usize = self.coalitions.values().map(|e| e.value).sum();
        (a + c) as u64
    }

    /// Checks the state invariants against `p`; each message names the
    /// invariant that broke.
    pub fn check_invariants(&self, game: &AnonymousGame, p: &Partition, peaks: &[usize]) -> Vec<String> {
        let mut out = Vec::new();
        let v = &self.agent_values;
        for c in p.coalitions() {
            let Some(e) = self.coalitions.get(c) else {
                out.push(format!("no entry for coalition {c}"));
                continue;
            };
            let size = c.len();
            if e.value > size - 1 {
                out.push(format!("coalition bound: v_C = {} > |C|-1 for {c}", e.value));
            }
            if e.value > 0 && (e.last.is_none() || c.members().iter().any(|&j| v[j] > size - 1)) {
                out.push(format!("positive value: positive v_C with bottom last or large member value in {c}"));
            }
            match e.last {
                Some(l) => {
                    if !c.contains(l) {
                        out.push(format!("last entrant: {l} not in {c}"));
                    } else if (e.value != v[l] && e.value != 0) || v[l] > size - 1 {
                        out.push(format!("last entrant: v_C = {}, v_l = {} in {c}", e.value, v[l]));
                    }
                }
                None => {
                    let all = |x: usize| c.members().iter().all(|&j| v[j] == x);
                    if !(all(size) || all(0)) || e.value != 0 {
                        out.push(format!("bottom entrant: bottom last but mixed values or v_C > 0 in {c}"));
                    }
                }
            }
        }
        for j in 0..v.len() {
            if v[j] == 0 {
                continue;
            }
            let size = p.coalition_of(j).len();
            if game.order(j).cmp_keys(&v[j], &size) == Ordering::Greater || peaks[j] <= v[j] {
                out.push(format!("agent value: v_{j} = {} vs |pi(j)| = {size}, peak {}", v[j], peaks[j]));
            }
        }
        out
    }
}

pub fn lambda_init(start: &Partition) -> LambdaState {
    LambdaState {
        agent_values: vec![0; start.n()],
        coalitions: start
            .coalitions()
            .iter()
            .map(|c| (c.clone(), CoalitionEntry { value: 0, last: None }))
            .collect(),
    }
}

/// Peaks of every agent; fails unless all orders are strict and naturally
/// single-peaked.
pub fn lambda_peaks(game: &AnonymousGame) -> Result<Vec<usize>, PotentialError> {
    if !game.is_strict() || !game.is_natural_sp() {
        return Err(PotentialError::PreconditionViolated(
            "lambda needs strict naturally single-peaked preferences".into(),
        ));
    }
    Ok((0..game.n()).map(|a| game.peak(a).unwrap_or(0)).collect())
}

/// One update of the values after `mv` is applied to `pre`.
pub fn lambda_step(
    state: &LambdaState,
    game: &AnonymousGame,
    pre: &Partition,
    mv: &DeviationMove,
) -> Result<(LambdaState, LambdaStep), PotentialError> {
    lambda_peaks(game)?;
    step_unchecked(state, pre, mv)
}

fn step_unchecked(
    state: &LambdaState,
    pre: &Partition,
    mv: &DeviationMove,
) -> Result<(LambdaState, LambdaStep), PotentialError> {
    let d = mv.agent;
    let post = apply(pre, mv)?;
    let old = pre.coalition_of(d);
    let e = post.coalition_of(d);
    let r_move = e.len() > old.len();
    let entry = state
        .coalitions
        .get(old)
        .copied()
        .ok_or_else(|| PotentialError::InvariantBroken(format!("no entry for {old}")))?;
    let l_k = entry.last;
    let prev = &state.agent_values;
    let mut next = state.clone();
    next.coalitions.remove(old);
    if let TargetRef::ExistingCoalition(t) = &mv.target {
        next.coalitions.remove(t);
    }
    let v = &mut next.agent_values;
    if r_move {
        v[d] = old.len();
    }
    for &j in e.members() {
        if j != d {
            v[j] = e.len() - 1;
        }
    }
    next.coalitions.insert(e.clone(), CoalitionEntry { value: v[d], last: Some(d) });

    let case = match old.without(d) {
        None => LambdaCase::NoAbandoned,
        Some(dk) => {
            let size = dk.len();
            let mut last = if l_k == Some(d) { None } else { l_k };
            let mut value = 0;
            let case = if !r_move {
                LambdaCase::LMove
            } else if dk.members().iter().all(|&j| prev[j] == 0) {
                LambdaCase::AllZero
            } else if l_k == Some(d) {
                LambdaCase::DeviatorWasLast
            } else if let Some(l) = l_k {
                if !dk.contains(l) {
                    return Err(PotentialError::InvariantBroken(format!("last entrant {l} left {old}")));
                }
                match prev[l].cmp(&size) {
                    Ordering::Equal => {
                        for &j in dk.members() {
                            v[j] = size;
                        }
                        last = None;
                        LambdaCase::Threshold
                    }
                    Ordering::Less => {
                        for &j in dk.members() {
                            if j != l {
                                v[j] = size - 1;
                            }
                        }
                        value = entry.value;
                        LambdaCase::BelowThreshold
                    }
                    Ordering::Greater => {
                        return Err(PotentialError::InvariantBroken(format!(
                            "v_l = {} exceeds |D| = {size}",
                            prev[l]
                        )))
                    }
                }
            } else {
                for &j in dk.members() {
                    v[j] = size;
                }
                LambdaCase::NoLast
            };
            next.coalitions.insert(dk, CoalitionEntry { value, last });
            case
        }
    };
    Ok((next, LambdaStep { r_move, case }))
}

pub struct LambdaMonitor<'g> {
    game: &'g AnonymousGame,
    peaks: Vec<usize>,
    state: Option<LambdaState>,
    /// Number of steps handled by each case, in `LambdaCase` order.
    pub case_counts: [u64; 7],
}

impl<'g> LambdaMonitor<'g> {
    pub fn new(game: &'g AnonymousGame) -> Result<Self, PotentialError> {
        let peaks = lambda_peaks(game)?;
        Ok(LambdaMonitor { game, peaks, state: None, case_counts: [0; 7] })
    }

    fn reading(&self, violations: Vec<String>) -> MonitorReading {
        let value = self.state.as_ref().map_or(0, |s| s.potential() as i64);
        MonitorReading::new("lambda", ReadingValue::Int(value), violations)
    }
}

impl Monitor for LambdaMonitor<'_> {
    fn name(&self) -> &'static str {
        "lambda"
    }

    fn start(&mut self, start: &Partition) -> MonitorReading {
        let s = lambda_init(start);
        let violations = s.check_invariants(self.game, start, &self.peaks);
        self.state = Some(s);
        self.reading(violations)
    }

    fn observe(&mut self, pre: &Partition, mv: &DeviationMove, post: &Partition) -> MonitorReading {
        let Some(state) = self.state.as_ref() else {
            return MonitorReading::new("lambda", ReadingValue::Int(0), vec!["observe before start".into()]);
        };
        let before = state.potential();
        match step_unchecked(state, pre, mv) {
            Ok((next, step)) => {
                self.case_counts[step.case as usize] += 1;
                let mut violations = next.check_invariants(self.game, post, &self.peaks);
                let after = next.potential();
                if after < before {
                    violations.push(format!("lambda decreased {before} -> {after}"));
                }
                if step.r_move && after <= before {
                    violations.push(format!("R-move did not raise lambda ({before} -> {after})"));
                }
                let n = self.game.n() as u64;
                if after > n * n {
                    violations.push(format!("lambda {after} exceeds n^2"));
                }
                self.state = Some(next);
                self.reading(violations)
            }
            Err(e) => self.reading(vec![e.to_string()]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{Tail, WeakOrder};

    /// Peaks at `peak`, natural single-peaked, strict.
    fn sp_order(n: usize, peak: usize) -> WeakOrder<usize> {
        let axis: Vec<usize> = (1..=n).collect();
        WeakOrder::complete_single_peaked(vec![vec![peak]], &axis).unwrap()
    }

    #[test]
    fn r_move_from_zero_coalition_adds_twice_size() {
        let g = AnonymousGame::from_orders(vec![sp_order(5, 3); 5]).unwrap();
        let p = Partition::new(5, vec![vec![0, 1], vec![2, 3, 4]]).unwrap();
        let s = lambda_init(&p);
        assert_eq!(s.potential(), 0);
        let mv = DeviationMove::join(0, Coalition::new(vec![2, 3, 4]).unwrap());
        let (next, step) = lambda_step(&s, &g, &p, &mv).unwrap();
        assert!(step.r_move);
        assert_eq!(step.case, LambdaCase::AllZero);
        // deviator 2 + coalition 2 + joined agents 3 each
        assert_eq!(next.potential(), 2 * 2 + 3 * 3);
    }

    #[test]
    fn rejects_weak_preferences() {
        let w = WeakOrder::new(vec![vec![1, 2]], Tail::Bottom).unwrap();
        let g = AnonymousGame::from_orders(vec![w; 2]).unwrap();
        assert!(LambdaMonitor::new(&g).is_err());
    }
}
