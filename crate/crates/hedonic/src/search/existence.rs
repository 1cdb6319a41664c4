use std::cmp::Ordering;

use crate::core::{is_stable, AgentId, Partition, Preferences, StabilityKind};
use crate::games::{FractionalGame, HedonicGame};
use crate::par;

use super::enumerate::{prefixes, Partitions, DEFAULT_CAP};
use super::{ExistenceAnswer, Meter, SearchBudget, SearchError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Every labelled partition.
    Plain,
    /// One partition per multiset of per-coalition type counts (AHG, HDG).
    TypeReduced,
    /// Only coalitions in which no member has negative utility (FHG).
    PrunedFHG,
}

impl Strategy {
    fn name(self) -> &'static str {
        match self {
            Strategy::Plain => "plain",
            Strategy::TypeReduced => "type-reduced",
            Strategy::PrunedFHG => "pruned-fhg",
        }
    }
}

/// Largest game `PrunedFHG` accepts; coalitions are bitmasks.
const PRUNED_CAP: usize = 24;

pub fn exists_is_partition(
    game: &HedonicGame,
    strategy: Strategy,
    budget: &SearchBudget,
) -> Result<ExistenceAnswer, SearchError> {
    budget.validate()?;
    let meter = Meter::new(budget);
    let found = par::with_threads(budget.parallelism, || match strategy {
        Strategy::Plain => plain(game, &meter),
        Strategy::TypeReduced => type_reduced(game, &meter),
        Strategy::PrunedFHG => match game.as_fractional() {
            Some(g) => pruned(g, game, &meter),
            None => Err(SearchError::WrongStrategy { strategy: strategy.name(), needs: "a fractional game" }),
        },
    })?;
    let checked = meter.count();
    Ok(match found {
        _ if meter.stopped() => ExistenceAnswer::BudgetExhausted { checked },
        Some(p) => ExistenceAnswer::Exists(p),
        None => ExistenceAnswer::None { checked },
    })
}

/// Smallest canonical witness among the candidates.
fn best(candidates: impl IntoIterator<Item = Option<Partition>>) -> Option<Partition> {
    candidates.into_iter().flatten().min_by_key(|p| p.canonical())
}

fn plain(game: &HedonicGame, meter: &Meter) -> Result<Option<Partition>, SearchError> {
    let n = game.n();
    if n > DEFAULT_CAP {
        return Err(SearchError::CapExceeded { n, cap: DEFAULT_CAP });
    }
    let work = prefixes(n.min(6));
    let results = par::map(&work, |pre| {
        let mut local: Option<Partition> = None;
        for p in Partitions::with_prefix(n, pre) {
            if !meter.tick(1) {
                break;
            }
            if is_stable(game, &p, StabilityKind::IS) && local.as_ref().is_none_or(|b| p.canonical() < b.canonical()) {
                local = Some(p);
            }
        }
        local
    });
    Ok(best(results))
}

/// Multisets of nonzero count vectors summing to `total`, as lists of
/// vectors in non-increasing mixed-radix index order.
fn vector_partitions(total: &[usize], meter: &Meter) -> Vec<Vec<Vec<usize>>> {
    let radix: Vec<usize> = total.iter().map(|&c| c + 1).collect();
    let index = |v: &[usize]| v.iter().zip(&radix).fold(0usize, |acc, (&x, &r)| acc * r + x);
    let decode = |mut i: usize| {
        let mut v = vec![0; radix.len()];
        for k in (0..radix.len()).rev() {
            v[k] = i % radix[k];
            i /= radix[k];
        }
        v
    };
    let mut out = Vec::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        rest: &mut Vec<usize>,
        max_index: usize,
        parts: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        index: &dyn Fn(&[usize]) -> usize,
        decode: &dyn Fn(usize) -> Vec<usize>,
        meter: &Meter,
    ) {
        if meter.stopped() {
            return;
        }
        if rest.iter().all(|&x| x == 0) {
            out.push(parts.clone());
            return;
        }
        let top = index(rest).min(max_index);
        for i in (1..=top).rev() {
            let v = decode(i);
            if v.iter().zip(rest.iter()).any(|(a, b)| a > b) {
                continue;
            }
            for (r, x) in rest.iter_mut().zip(&v) {
                *r -= x;
            }
            parts.push(v);
            go(rest, i, parts, out, index, decode, meter);
            let v = parts.pop().expect("pushed above");
            for (r, x) in rest.iter_mut().zip(&v) {
                *r += x;
            }
        }
    }

    let mut rest = total.to_vec();
    go(&mut rest, usize::MAX, &mut parts, &mut out, &index, &decode, meter);
    out
}

fn type_reduced(game: &HedonicGame, meter: &Meter) -> Result<Option<Partition>, SearchError> {
    let types = game.agent_types().ok_or(SearchError::WrongStrategy {
        strategy: Strategy::TypeReduced.name(),
        needs: "an anonymous or diversity game",
    })?;
    let t = types.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<AgentId>> = vec![Vec::new(); t];
    for (a, &k) in types.iter().enumerate() {
        members[k].push(a);
    }
    let counts: Vec<usize> = members.iter().map(Vec::len).collect();
    let classes = vector_partitions(&counts, meter);
    let n = game.n();
    let results = par::map(&classes, |parts| {
        if !meter.tick(1) {
            return None;
        }
        // Agents of each type are handed out in ascending order.
        let mut next = vec![0usize; t];
        let mut groups = Vec::with_capacity(parts.len());
        for v in parts {
            let mut g = Vec::new();
            for (k, &c) in v.iter().enumerate() {
                g.extend_from_slice(&members[k][next[k]..next[k] + c]);
                next[k] += c;
            }
            groups.push(g);
        }
        let p = Partition::new(n, groups).expect("type counts cover every agent once");
        is_stable(game, &p, StabilityKind::IS).then_some(p)
    });
    Ok(best(results))
}

/// Bitmasks of the coalitions in which every member's utility is at least
/// 0. A member with negative utility can always leave to be alone, so no IS
/// partition uses any other coalition.
pub fn fhg_valid_coalitions(game: &FractionalGame) -> Result<Vec<u32>, SearchError> {
    let n = game.n();
    if n > PRUNED_CAP {
        return Err(SearchError::CapExceeded { n, cap: PRUNED_CAP });
    }
    let masks: Vec<u32> = (1u32..(1u32 << n)).collect();
    let keep = par::map(&masks, |&m| {
        let c: Vec<AgentId> = (0..n).filter(|&a| m >> a & 1 == 1).collect();
        c.iter().all(|&a| game.utility_sign(a, &c) != Ordering::Less)
    });
    Ok(masks.into_iter().zip(keep).filter_map(|(m, k)| k.then_some(m)).collect())
}

fn members_of(m: u32, n: usize) -> Vec<AgentId> {
    (0..n).filter(|&a| m >> a & 1 == 1).collect()
}

/// Whether `a` (in `from`) has an IS move into `to`.
fn is_move(game: &HedonicGame, a: AgentId, from: &[AgentId], to: &[AgentId]) -> bool {
    let mut joined = to.to_vec();
    let pos = joined.binary_search(&a).unwrap_or_else(|e| e);
    joined.insert(pos, a);
    game.compare_members(a, &joined, from) == Ordering::Greater
        && to.iter().all(|&j| game.compare_members(j, &joined, to) != Ordering::Less)
}

/// Coalitions are fixed in order of their smallest member. Each new
/// coalition is checked against the fixed ones in both directions, so a
/// complete assignment that survives is IS: leaving to be alone was ruled
/// out by the utility filter.
fn pruned(g: &FractionalGame, game: &HedonicGame, meter: &Meter) -> Result<Option<Partition>, SearchError> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(Partition::singletons(0)));
    }
    let valid = fhg_valid_coalitions(g)?;
    let mut by_min: Vec<Vec<(u32, Vec<AgentId>)>> = vec![Vec::new(); n];
    for &m in &valid {
        by_min[m.trailing_zeros() as usize].push((m, members_of(m, n)));
    }
    let full: u32 = (1u32 << n) - 1;

    struct Ctx<'a> {
        by_min: &'a [Vec<(u32, Vec<AgentId>)>],
        n: usize,
        game: &'a HedonicGame,
        meter: &'a Meter,
    }

    fn go<'a>(cx: &Ctx<'a>, left: u32, chosen: &mut Vec<&'a [AgentId]>, best: &mut Option<Partition>) {
        if !cx.meter.tick(1) {
            return;
        }
        if left == 0 {
            let groups = chosen.iter().map(|c| c.to_vec()).collect();
            let p = Partition::new(cx.n, groups).expect("masks are disjoint and cover all agents");
            debug_assert!(is_stable(cx.game, &p, StabilityKind::IS));
            if best.as_ref().is_none_or(|b| p.canonical() < b.canonical()) {
                *best = Some(p);
            }
            return;
        }
        let a = left.trailing_zeros() as usize;
        for (m, c) in &cx.by_min[a] {
            if m & !left != 0 {
                continue;
            }
            let clash = chosen.iter().any(|d| {
                c.iter().any(|&x| is_move(cx.game, x, c, d)) || d.iter().any(|&x| is_move(cx.game, x, d, c))
            });
            if !clash {
                chosen.push(c);
                go(cx, left & !m, chosen, best);
                chosen.pop();
            }
        }
    }

    let cx = Ctx { by_min: &by_min, n, game, meter };
    let results = par::map(&by_min[0], |(m, c)| {
        let mut best = None;
        go(&cx, full & !m, &mut vec![c.as_slice()], &mut best);
        best
    });
    Ok(best(results))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(total: &[usize]) -> usize {
        let meter = Meter::new(&SearchBudget::default());
        vector_partitions(total, &meter).len()
    }

    #[test]
    fn vector_partition_counts() {
        // integer partitions of 5 and set partitions of 4 distinct items
        assert_eq!(count(&[5]), 7);
        assert_eq!(count(&[1, 1, 1, 1]), 15);
        // (2, 1): {21}, {20,01}, {11,10}, {10,10,01}
        assert_eq!(count(&[2, 1]), 4);
    }
}
