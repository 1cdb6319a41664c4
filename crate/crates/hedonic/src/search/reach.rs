use std::collections::HashMap;

use crate::core::{apply, enumerate_deviations, is_stable, CanonicalForm, DeviationMove, Partition, StabilityKind};
use crate::games::HedonicGame;
use crate::par;

use super::{check_size, Meter, ReachabilityAnswer, SearchBudget, SearchError};

/// Breadth-first search over the IS deviation graph from `start`. Levels
/// are expanded in parallel and merged in frontier order, so the answer is
/// the same for any worker count.
pub fn exists_path_to_is(
    game: &HedonicGame,
    start: &Partition,
    budget: &SearchBudget,
) -> Result<ReachabilityAnswer, SearchError> {
    budget.validate()?;
    check_size(game.n(), start)?;
    let meter = Meter::new(budget);
    par::with_threads(budget.parallelism, || bfs(game, start, &meter))
}

fn bfs(game: &HedonicGame, start: &Partition, meter: &Meter) -> Result<ReachabilityAnswer, SearchError> {
    // Arena of states with the edge that first reached each one.
    let mut states: Vec<Partition> = vec![start.clone()];
    let mut parent: Vec<Option<(usize, DeviationMove)>> = vec![None];
    let mut seen: HashMap<CanonicalForm, usize> = HashMap::from([(start.canonical(), 0)]);
    let mut frontier: Vec<usize> = vec![0];
    meter.tick(1);
    while !frontier.is_empty() {
        let expanded = par::map(&frontier, |&i| {
            let p = &states[i];
            if is_stable(game, p, StabilityKind::IS) {
                return None;
            }
            Some(enumerate_deviations(game, p, StabilityKind::IS))
        });
        if let Some(k) = expanded.iter().position(Option::is_none) {
            let end = frontier[k];
            let mut moves = Vec::new();
            let mut cur = end;
            while let Some((prev, mv)) = &parent[cur] {
                moves.push(mv.clone());
                cur = *prev;
            }
            moves.reverse();
            return Ok(ReachabilityAnswer::PathFound { moves, end: states[end].clone() });
        }
        let mut next = Vec::new();
        for (&i, moves) in frontier.iter().zip(expanded) {
            for mv in moves.expect("stable states returned above") {
                let q = apply(&states[i], &mv)?;
                let key = q.canonical();
                if seen.contains_key(&key) {
                    continue;
                }
                if !meter.tick(1) {
                    return Ok(ReachabilityAnswer::BudgetExhausted { explored: states.len() as u64 });
                }
                seen.insert(key, states.len());
                next.push(states.len());
                states.push(q);
                parent.push(Some((i, mv)));
            }
        }
        frontier = next;
    }
    Ok(ReachabilityAnswer::NoPath { explored: states.len() as u64 })
}

/// Depth-first search for a directed cycle in the IS deviation graph
/// reachable from `start`.
pub fn all_paths_converge(
    game: &HedonicGame,
    start: &Partition,
    budget: &SearchBudget,
) -> Result<ReachabilityAnswer, SearchError> {
    budget.validate()?;
    check_size(game.n(), start)?;
    let meter = Meter::new(budget);
    dfs(game, start, &meter)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    OnPath(usize),
    Done,
}

struct Frame {
    state: Partition,
    moves: Vec<DeviationMove>,
    next: usize,
}

fn dfs(game: &HedonicGame, start: &Partition, meter: &Meter) -> Result<ReachabilityAnswer, SearchError> {
    let mut marks: HashMap<CanonicalForm, Mark> = HashMap::new();
    let frame = |p: Partition| Frame { moves: enumerate_deviations(game, &p, StabilityKind::IS), state: p, next: 0 };
    marks.insert(start.canonical(), Mark::OnPath(0));
    meter.tick(1);
    let mut stack = vec![frame(start.clone())];
    // path[k] is the move taken out of stack[k].
    let mut path: Vec<DeviationMove> = Vec::new();
    while let Some(top) = stack.last_mut() {
        if top.next == top.moves.len() {
            let done = stack.pop().expect("non-empty");
            marks.insert(done.state.canonical(), Mark::Done);
            path.pop();
            continue;
        }
        let mv = top.moves[top.next].clone();
        top.next += 1;
        let q = apply(&top.state, &mv)?;
        let key = q.canonical();
        match marks.get(&key) {
            Some(Mark::Done) => {}
            Some(&Mark::OnPath(depth)) => {
                path.push(mv);
                let cycle = path.split_off(depth);
                return Ok(ReachabilityAnswer::CycleReachable { prefix: path, cycle });
            }
            None => {
                if !meter.tick(1) {
                    return Ok(ReachabilityAnswer::BudgetExhausted { explored: marks.len() as u64 });
                }
                marks.insert(key, Mark::OnPath(stack.len()));
                path.push(mv);
                stack.push(frame(q));
            }
        }
    }
    Ok(ReachabilityAnswer::ConvergesAlways { explored: marks.len() as u64 })
}
