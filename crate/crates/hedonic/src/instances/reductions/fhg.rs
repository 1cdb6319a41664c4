//! Exact cover by 3-sets to fractional games.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::core::{AgentId, Partition};
use crate::games::{FractionalGame, Rational};
use crate::instances::catalog::triangle_ring_pairs;
use crate::instances::{InstanceError, NamedInstance, X3CInstance};

use super::{check_agents, violation, with_singletons, ReductionParams};

/// Sequential agent ids.
#[derive(Default)]
struct Ids(usize);

impl Ids {
    fn take(&mut self, k: usize) -> Vec<AgentId> {
        let v = (self.0..self.0 + k).collect();
        self.0 += k;
        v
    }

    fn one(&mut self) -> AgentId {
        self.take(1)[0]
    }
}

/// Number of sets containing each element, minus one.
fn extra_copies(x: &X3CInstance) -> Result<Vec<usize>, InstanceError> {
    x.require_covering()?;
    Ok(x.occurrences().into_iter().map(|c| c - 1).collect())
}

fn surplus(x: &X3CInstance) -> Result<usize, InstanceError> {
    x.surplus().ok_or_else(|| {
        InstanceError::FormulaClassViolation(format!("{} sets cannot cover {} elements", x.sets.len(), x.ground_size))
    })
}

/// 15-agent gadget starting at `base`: triangle w is base+3w..base+3w+3
/// holding (a_w, b_w, c_w).
fn gadget_pairs(base: AgentId) -> Vec<(AgentId, AgentId, Rational)> {
    let bases: Vec<AgentId> = (0..5).map(|w| base + 3 * w).collect();
    triangle_ring_pairs(&bases)
}

/// Position of element `r` inside set `s`.
fn slot(s: &[usize; 3], r: usize) -> usize {
    s.iter().position(|&e| e == r).expect("element of the set")
}

pub(super) fn sym_exists(x: &X3CInstance) -> Result<NamedInstance, InstanceError> {
    let copies = extra_copies(x)?;
    let n = check_agents(4 * x.sets.len() as u128 + 15 * copies.iter().sum::<usize>() as u128)?;
    let mut ids = Ids::default();
    // t_s then s^i for the three elements, in ascending element order
    let cliques: Vec<Vec<AgentId>> = x.sets.iter().map(|_| ids.take(4)).collect();
    let gadgets: Vec<Vec<AgentId>> = copies.iter().map(|&k| (0..k).map(|_| ids.take(15)[0]).collect()).collect();
    let w = Rational::integer(304);
    let mut pairs = Vec::new();
    for (s, q) in x.sets.iter().zip(&cliques) {
        for i in 0..4 {
            for j in i + 1..4 {
                pairs.push((q[i], q[j], w.clone()));
            }
        }
        for (k, &r) in s.iter().enumerate() {
            for &a1 in &gadgets[r] {
                pairs.push((q[k + 1], a1, w.clone()));
            }
        }
    }
    for g in gadgets.iter().flatten() {
        pairs.extend(gadget_pairs(*g));
    }
    let game = FractionalGame::symmetric(n, Rational::zero(), pairs)?;
    Ok(NamedInstance::new("x3c→symfhg-exists", game)
        .with_start("singletons", Partition::singletons(n))
        .with_note("gadget", "15-agent ring with weight 0 in place of the negative default"))
}

/// Weight that separates the l and l+1 thresholds around 152, as an exact
/// fraction 76(2l² + 4l + 1) / (l(l + 1)); 305 when l = 0.
fn default_alpha(l: usize) -> Result<Rational, InstanceError> {
    if l == 0 {
        return Ok(Rational::integer(305));
    }
    let l = l as i64;
    Ok(Rational::new(76 * (2 * l * l + 4 * l + 1), l * (l + 1))?)
}

pub(super) fn sym_converge(x: &X3CInstance, params: &ReductionParams) -> Result<NamedInstance, InstanceError> {
    let l = surplus(x)?;
    let alpha = match params.get("alpha") {
        Some(v) => Rational::integer(i64::try_from(v).map_err(|_| violation("alpha too large"))?),
        None => default_alpha(l)?,
    };
    let big = |v: usize| BigRational::from_integer(BigInt::from(v));
    let a = &alpha.0;
    let lhs = big(l) / big(l + 1) * a;
    let rhs = big(l + 1) / big(l + 2) * a;
    let limit = big(152);
    if !(lhs < limit && limit < rhs) {
        return Err(violation(format!("need l/(l+1)·alpha < 152 < (l+1)/(l+2)·alpha with l = {l}, alpha = {alpha}")));
    }
    let n = check_agents(x.ground_size as u128 + 5 * x.sets.len() as u128 + 15)?;
    let mut ids = Ids::default();
    let elems = ids.take(x.ground_size);
    // per set: s_1, then r^s for its three elements, then s_2
    let sets: Vec<(AgentId, Vec<AgentId>, AgentId)> =
        x.sets.iter().map(|_| (ids.one(), ids.take(3), ids.one())).collect();
    let c = ids.one();
    ids.take(14);
    let two = Rational(&alpha.0 * big(2));
    let mut pairs = gadget_pairs(c);
    for (s, (s1, rs, s2)) in x.sets.iter().zip(&sets) {
        pairs.push((c, *s2, alpha.clone()));
        pairs.push((*s1, *s2, alpha.clone()));
        for (k, &r) in s.iter().enumerate() {
            pairs.push((*s1, rs[k], alpha.clone()));
            pairs.push((rs[k], elems[r], two.clone()));
        }
    }
    let game = FractionalGame::symmetric(n, Rational::zero(), pairs)?;
    let g = |w: usize, k: usize| c + 3 * (w - 1) + k;
    let mut groups: Vec<Vec<AgentId>> = sets.iter().map(|(s1, rs, _)| [vec![*s1], rs.clone()].concat()).collect();
    groups.push([vec![c], sets.iter().map(|t| t.2).collect()].concat());
    groups.push(vec![g(1, 1), g(1, 2)]);
    groups.push((2..=3).flat_map(|w| (0..3).map(move |k| g(w, k))).collect());
    groups.push((4..=5).flat_map(|w| (0..3).map(move |k| g(w, k))).collect());
    Ok(NamedInstance::new("x3c→symfhg-converge", game)
        .with_start("initial", with_singletons(n, groups)?)
        .with_note("constants", format!("l={l} alpha={alpha}"))
        .with_note("element links", "v(r^s, r) = 2·alpha for r in s"))
}

pub(super) fn asym_exists(x: &X3CInstance) -> Result<NamedInstance, InstanceError> {
    let copies = extra_copies(x)?;
    let l = surplus(x)?;
    let n = check_agents(copies.iter().sum::<usize>() as u128 + 4 * x.sets.len() as u128 + 3 * l as u128)?;
    let mut ids = Ids::default();
    let rk: Vec<Vec<AgentId>> = copies.iter().map(|&k| ids.take(k)).collect();
    // per set: s, then r^s for its three elements
    let sets: Vec<Vec<AgentId>> = x.sets.iter().map(|_| ids.take(4)).collect();
    let tri: Vec<Vec<AgentId>> = (0..l).map(|_| ids.take(3)).collect();
    let mut arcs = Vec::new();
    for (s, q) in x.sets.iter().zip(&sets) {
        for (k, &r) in s.iter().enumerate() {
            arcs.push((q[0], q[k + 1]));
            arcs.extend(rk[r].iter().map(|&t| (q[k + 1], t)));
        }
        arcs.extend(tri.iter().map(|t| (q[0], t[0])));
    }
    for t in &tri {
        arcs.extend([(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]);
    }
    let game = FractionalGame::from_arcs(n, &arcs)?;
    Ok(NamedInstance::new("x3c→asymfhg-exists", game)
        .with_start("initial", with_singletons(n, sets)?)
        .with_note("constants", format!("l={l}")))
}

pub(super) fn asym_converge(x: &X3CInstance) -> Result<NamedInstance, InstanceError> {
    let copies = extra_copies(x)?;
    let l = x.ground_size / 3;
    let n = check_agents(copies.iter().sum::<usize>() as u128 + 5 * x.sets.len() as u128 + 3 + l as u128)?;
    let mut ids = Ids::default();
    let rk: Vec<Vec<AgentId>> = copies.iter().map(|&k| ids.take(k)).collect();
    // per set: s_1, then r^s for its three elements, then s_2
    let sets: Vec<Vec<AgentId>> = x.sets.iter().map(|_| ids.take(5)).collect();
    let b = ids.take(3);
    let a = ids.take(l);
    let mut arcs = Vec::new();
    for (s, q) in x.sets.iter().zip(&sets) {
        for (k, &r) in s.iter().enumerate() {
            arcs.push((q[0], q[k + 1]));
            arcs.extend(rk[r].iter().map(|&t| (q[k + 1], t)));
        }
        arcs.push((q[0], q[4]));
        arcs.push((b[0], q[4]));
    }
    arcs.extend(a.iter().map(|&v| (v, b[0])));
    arcs.extend([(b[1], b[2]), (b[2], b[0])]);
    let game = FractionalGame::from_arcs(n, &arcs)?;
    let mut groups: Vec<Vec<AgentId>> = sets.iter().map(|q| q[..4].to_vec()).collect();
    groups.push([vec![b[0]], sets.iter().map(|q| q[4]).collect(), a].concat());
    Ok(NamedInstance::new("x3c→asymfhg-converge", game)
        .with_start("initial", with_singletons(n, groups)?)
        .with_note("constants", format!("l={l}"))
        .with_note("copies", "r^s points to every copy r_1..r_m of its element"))
}

pub(super) fn simple_exists(x: &X3CInstance) -> Result<NamedInstance, InstanceError> {
    let l = surplus(x)?;
    let n = check_agents(3 * x.ground_size as u128 + 6 * x.sets.len() as u128 + 3 * l as u128)?;
    let mut ids = Ids::default();
    let elems: Vec<Vec<AgentId>> = (0..x.ground_size).map(|_| ids.take(3)).collect();
    // per set and element slot: (s_1^i, s_2^i)
    let sets: Vec<Vec<(AgentId, AgentId)>> =
        x.sets.iter().map(|_| (0..3).map(|_| (ids.one(), ids.one())).collect()).collect();
    let ts: Vec<Vec<AgentId>> = (0..l).map(|_| ids.take(3)).collect();
    let mut arcs = Vec::new();
    for r in &elems {
        arcs.extend([(r[0], r[1]), (r[1], r[2]), (r[2], r[0])]);
    }
    for (s, q) in x.sets.iter().zip(&sets) {
        for &r in s {
            let (s1, s2) = q[slot(s, r)];
            arcs.extend([(elems[r][0], s1), (s1, elems[r][0]), (s1, s2), (s2, s1)]);
            arcs.extend(ts.iter().map(|t| (t[0], s1)));
        }
    }
    for t in &ts {
        arcs.extend([(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]);
    }
    let game = FractionalGame::from_arcs(n, &arcs)?;
    Ok(NamedInstance::new("x3c→simplefhg-exists", game)
        .with_start("singletons", Partition::singletons(n))
        .with_note("constants", format!("l={l}")))
}
