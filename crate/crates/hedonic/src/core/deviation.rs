use std::cmp::Ordering;
use std::fmt;

use super::partition::{insert_sorted, AgentId, Coalition, Partition};
use super::{CoreError, Preferences};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityKind {
    Nash,
    IS,
    CIS,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TargetRef {
    ExistingCoalition(Coalition),
    NewSingleton,
}

/// A unilateral deviation: `agent` leaves its coalition for `target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeviationMove {
    pub agent: AgentId,
    pub target: TargetRef,
}

impl DeviationMove {
    pub fn join(agent: AgentId, target: Coalition) -> Self {
        DeviationMove { agent, target: TargetRef::ExistingCoalition(target) }
    }

    pub fn alone(agent: AgentId) -> Self {
        DeviationMove { agent, target: TargetRef::NewSingleton }
    }
}

impl fmt::Display for DeviationMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.target {
            TargetRef::ExistingCoalition(c) => write!(f, "{} -> {}", self.agent, c),
            TargetRef::NewSingleton => write!(f, "{} -> new", self.agent),
        }
    }
}

/// Why a move is or is not a deviation of the requested kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeviationCheck {
    Valid,
    /// The deviator does not strictly gain.
    NotImproving,
    /// A member of the welcoming coalition would be worse off.
    WelcomingObjects(AgentId),
    /// A member of the abandoned coalition would be worse off (CIS only).
    AbandonedObjects(AgentId),
}

impl DeviationCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, DeviationCheck::Valid)
    }
}

impl fmt::Display for DeviationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeviationCheck::Valid => write!(f, "valid"),
            DeviationCheck::NotImproving => write!(f, "deviator does not strictly improve"),
            DeviationCheck::WelcomingObjects(j) => {
                write!(f, "agent {j} of the welcoming coalition is worse off")
            }
            DeviationCheck::AbandonedObjects(j) => {
                write!(f, "agent {j} of the abandoned coalition is worse off")
            }
        }
    }
}

/// Resolves `move.target` against `p`; returns the target's index, if any.
fn resolve(p: &Partition, mv: &DeviationMove) -> Result<Option<usize>, CoreError> {
    let agent = mv.agent;
    if agent >= p.n() {
        return Err(CoreError::AgentOutOfRange { agent, n: p.n() });
    }
    match &mv.target {
        TargetRef::NewSingleton => {
            if p.coalition_of(agent).len() == 1 {
                return Err(CoreError::InvalidTarget {
                    agent,
                    reason: "already a singleton".into(),
                });
            }
            Ok(None)
        }
        TargetRef::ExistingCoalition(t) => {
            if t.contains(agent) {
                return Err(CoreError::InvalidTarget { agent, reason: format!("already in {t}") });
            }
            if let Some(&hi) = t.members().last().filter(|&&hi| hi >= p.n()) {
                return Err(CoreError::AgentOutOfRange { agent: hi, n: p.n() });
            }
            let idx = p.index_of(t.min());
            if &p.coalitions()[idx] != t {
                return Err(CoreError::InvalidTarget { agent, reason: format!("{t} not in partition") });
            }
            Ok(Some(idx))
        }
    }
}

pub fn apply(p: &Partition, mv: &DeviationMove) -> Result<Partition, CoreError> {
    let target = resolve(p, mv)?;
    Ok(apply_resolved(p, mv.agent, target))
}

fn apply_resolved(p: &Partition, agent: AgentId, target: Option<usize>) -> Partition {
    let src = p.index_of(agent);
    let mut added = Vec::with_capacity(2);
    if let Some(rest) = p.coalitions()[src].without(agent) {
        added.push(rest);
    }
    match target {
        Some(t) => {
            added.push(p.coalitions()[t].with(agent));
            p.rebuild(&[src, t], added)
        }
        None => {
            added.push(Coalition::singleton(agent));
            p.rebuild(&[src], added)
        }
    }
}

/// Checks the deviation conditions for an already resolved target.
fn check_resolved<P: Preferences + ?Sized>(
    game: &P,
    p: &Partition,
    agent: AgentId,
    target: Option<usize>,
    kind: StabilityKind,
) -> DeviationCheck {
    let old = p.coalition_of(agent).members();
    let joined: Vec<AgentId> = match target {
        Some(t) => insert_sorted(p.coalitions()[t].members(), agent),
        None => vec![agent],
    };
    if game.compare_members(agent, &joined, old) != Ordering::Greater {
        return DeviationCheck::NotImproving;
    }
    if kind == StabilityKind::Nash {
        return DeviationCheck::Valid;
    }
    if let Some(t) = target {
        let before = p.coalitions()[t].members();
        if let Some(j) = game.first_objector(before, &joined, before) {
            return DeviationCheck::WelcomingObjects(j);
        }
    }
    if kind == StabilityKind::CIS {
        let rest: Vec<AgentId> = old.iter().copied().filter(|&j| j != agent).collect();
        if let Some(j) = game.first_objector(&rest, &rest, old) {
            return DeviationCheck::AbandonedObjects(j);
        }
    }
    DeviationCheck::Valid
}

/// Detailed check of one move; the error path covers unresolvable targets.
pub fn check_deviation<P: Preferences + ?Sized>(
    game: &P,
    p: &Partition,
    mv: &DeviationMove,
    kind: StabilityKind,
) -> Result<DeviationCheck, CoreError> {
    let target = resolve(p, mv)?;
    Ok(check_resolved(game, p, mv.agent, target, kind))
}

pub fn is_deviation_of_kind<P: Preferences + ?Sized>(
    game: &P,
    p: &Partition,
    mv: &DeviationMove,
    kind: StabilityKind,
) -> Result<bool, CoreError> {
    Ok(check_deviation(game, p, mv, kind)?.is_valid())
}

/// Candidate (agent, target) pairs in the deterministic enumeration order.
fn candidates(p: &Partition) -> impl Iterator<Item = (AgentId, Option<usize>)> + '_ {
    (0..p.n()).flat_map(move |agent| {
        let own = p.index_of(agent);
        let lone = p.coalitions()[own].len() == 1;
        (0..p.len())
            .filter(move |&t| t != own)
            .map(Some)
            .chain((!lone).then_some(None))
            .map(move |t| (agent, t))
    })
}

fn to_move(p: &Partition, agent: AgentId, target: Option<usize>) -> DeviationMove {
    match target {
        Some(t) => DeviationMove::join(agent, p.coalitions()[t].clone()),
        None => DeviationMove::alone(agent),
    }
}

/// All deviations of `kind`: ascending agent, then targets in canonical
/// coalition order, then the new singleton.
pub fn enumerate_deviations<P: Preferences + ?Sized>(
    game: &P,
    p: &Partition,
    kind: StabilityKind,
) -> Vec<DeviationMove> {
    candidates(p)
        .filter(|&(a, t)| check_resolved(game, p, a, t, kind).is_valid())
        .map(|(a, t)| to_move(p, a, t))
        .collect()
}

/// First element of `enumerate_deviations`, without building the rest.
pub fn first_deviation<P: Preferences + ?Sized>(
    game: &P,
    p: &Partition,
    kind: StabilityKind,
) -> Option<DeviationMove> {
    candidates(p)
        .find(|&(a, t)| check_resolved(game, p, a, t, kind).is_valid())
        .map(|(a, t)| to_move(p, a, t))
}

pub fn is_stable<P: Preferences + ?Sized>(game: &P, p: &Partition, kind: StabilityKind) -> bool {
    first_deviation(game, p, kind).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Everyone wants bigger coalitions.
    struct Bigger(usize);
    impl Preferences for Bigger {
        fn n(&self) -> usize {
            self.0
        }
        fn compare_members(&self, _: AgentId, a: &[AgentId], b: &[AgentId]) -> Ordering {
            a.len().cmp(&b.len())
        }
    }

    fn part(n: usize, g: &[&[usize]]) -> Partition {
        Partition::new(n, g.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn apply_moves_agent() {
        let p = part(3, &[&[0, 1], &[2]]);
        let q = apply(&p, &DeviationMove::join(0, Coalition::singleton(2))).unwrap();
        assert_eq!(q.to_vecs(), vec![vec![0, 2], vec![1]]);
        let g = Partition::grand(3);
        let q = apply(&g, &DeviationMove::alone(1)).unwrap();
        assert_eq!(q.to_vecs(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn apply_rejects_missing_target() {
        let p = part(3, &[&[0, 1], &[2]]);
        let bad = DeviationMove::join(0, Coalition::new(vec![1, 2]).unwrap());
        assert!(matches!(apply(&p, &bad), Err(CoreError::InvalidTarget { .. })));
        let lone = DeviationMove::alone(2);
        assert!(apply(&p, &lone).is_err());
    }

    #[test]
    fn enumeration_order() {
        let g = Bigger(3);
        let p = Partition::singletons(3);
        let moves = enumerate_deviations(&g, &p, StabilityKind::IS);
        let agents: Vec<_> = moves.iter().map(|m| m.agent).collect();
        assert_eq!(agents, vec![0, 0, 1, 1, 2, 2]);
        assert_eq!(moves[0], DeviationMove::join(0, Coalition::singleton(1)));
        assert_eq!(first_deviation(&g, &p, StabilityKind::IS).as_ref(), moves.first());
        assert!(is_stable(&g, &Partition::grand(3), StabilityKind::CIS));
    }

    #[test]
    fn cis_respects_abandoned() {
        let g = Bigger(4);
        let p = part(4, &[&[0, 1, 2], &[3]]);
        // only 3 joining the big coalition is admissible
        let moves = enumerate_deviations(&g, &p, StabilityKind::CIS);
        assert_eq!(moves, vec![DeviationMove::join(3, Coalition::new(vec![0, 1, 2]).unwrap())]);
        let p = part(4, &[&[0, 1], &[2, 3]]);
        let mv = DeviationMove::join(0, Coalition::new(vec![2, 3]).unwrap());
        assert_eq!(check_deviation(&g, &p, &mv, StabilityKind::IS).unwrap(), DeviationCheck::Valid);
        assert_eq!(
            check_deviation(&g, &p, &mv, StabilityKind::CIS).unwrap(),
            DeviationCheck::AbandonedObjects(1)
        );
    }
}
