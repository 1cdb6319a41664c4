//! (3,B2)-SAT to anonymous games: IS-sequence existence and convergence.

use std::collections::HashSet;

use crate::core::AgentId;
use crate::games::AnonymousGame;

use super::{check_agents, constant, violation, with_singletons, Gadget, LiteralAgents, Profiles, ReductionParams};
use crate::instances::{NamedInstance, SatFormula};

/// Families `{q·c + x : q ∈ 1..=count, x ∈ 0..=slack}` must be pairwise
/// disjoint.
fn check_disjoint(families: &[(&str, u64, u64, u64)]) -> Result<(), crate::instances::InstanceError> {
    let mut owner: std::collections::HashMap<u128, &str> = Default::default();
    for &(name, c, count, slack) in families {
        let mut own = HashSet::new();
        for q in 1..=count as u128 {
            for x in 0..=slack as u128 {
                let v = q * c as u128 + x;
                if !own.insert(v) {
                    continue;
                }
                if let Some(other) = owner.insert(v, name) {
                    return Err(violation(format!("size {v} is reachable from both {other} and {name}")));
                }
            }
        }
    }
    Ok(())
}

fn decreasing(names: &[&str], values: &[u64]) -> Result<(), crate::instances::InstanceError> {
    for k in 1..values.len() {
        if values[k - 1] <= values[k] {
            return Err(violation(format!("need {} > {}", names[k - 1], names[k])));
        }
    }
    if values.last().is_some_and(|&v| v <= 1) {
        return Err(violation(format!("need {} > 1", names[names.len() - 1])));
    }
    Ok(())
}

fn us(v: u64) -> usize {
    v as usize
}

pub(super) fn exists(f: &SatFormula, params: &ReductionParams) -> Result<NamedInstance, crate::instances::InstanceError> {
    let lits = LiteralAgents::new(f)?;
    let (m, p) = (f.num_clauses() as u64, f.num_vars as u64);
    let alpha = constant(params, "alpha", m, 5)?;
    let bp = constant(params, "beta_plus", m, 4)?;
    let bm = constant(params, "beta_minus", m, 3)?;
    let gamma = constant(params, "gamma", m, 2)?;
    decreasing(&["alpha", "beta_plus", "beta_minus", "gamma"], &[alpha, bp, bm, gamma])?;
    check_disjoint(&[("alpha", alpha, m, 2), ("beta_plus", bp, p, 2), ("beta_minus", bm, p, 2), ("gamma", gamma, p, 7)])?;

    let (m128, p128) = (m as u128, p as u128);
    let tri = |k: u128| k * (k + 1) / 2;
    let n = check_agents(
        4 * p128
            + alpha as u128 * tri(m128)
            + (bp as u128 + bm as u128) * tri(p128)
            + 3 * gamma as u128 * tri(p128)
            + 8 * p128,
    )?;

    let kz = |c: u64| us(c * alpha);
    let zs = |i: u64| us(i * bp);
    let zbs = |i: u64| us(i * bm);
    let gs = |i: u64| [us(i * gamma), us(i * gamma) + 3, us(i * gamma) + 5];

    let mut t = Profiles::with_capacity(n);
    for i in 0..f.num_vars {
        let iv = i as u64 + 1;
        for positive in [true, false] {
            let own = if positive { zs(iv) } else { zbs(iv) };
            for l in 0..2 {
                let a = LiteralAgents::id(i, positive, l);
                t.push(1, vec![kz(lits.cl(a)) + 1, own + 2, own + 1, 1])?;
            }
        }
    }
    let mut groups: Vec<Vec<AgentId>> = Vec::new();
    for j in 1..=m {
        let k = kz(j);
        groups.push(t.push(k, vec![k + 1, k])?);
    }
    let mut gadgets = Vec::new();
    for iv in 1..=p {
        let (z, zb, [g1, g2, g3]) = (zs(iv), zbs(iv), gs(iv));
        let mut zg = t.push(1, vec![z + 2, g1 + 2, g2 + 1, g3 + 2, g3 + 1, g1 + 1, z + 1, z])?;
        zg.extend(t.push(z - 1, vec![z + 2, z + 1, z, z - 1])?);
        let mut zbg = t.push(1, vec![zb + 2, g3 + 2, g2 + 1, g1 + 2, g1 + 1, g3 + 1, zb + 1, zb])?;
        zbg.extend(t.push(zb - 1, vec![zb + 2, zb + 1, zb, zb - 1])?);
        let d1 = t.push(g1, vec![g1 + 2, g1 + 1, g1])?;
        let d2 = t.push(g2, vec![g2 + 1, g2])?;
        let d3 = t.push(g3, vec![g3 + 2, g3 + 1, g3])?;
        gadgets.push(Gadget { z: zg[0], zb: zbg[0], g: [d1.clone(), d2.clone(), d3.clone()] });
        groups.extend([zg, zbg, d1, d2, d3]);
    }
    debug_assert_eq!(t.len(), n);
    let game = AnonymousGame::new(n, t.profiles, t.profile_of)?;
    let mut inst = NamedInstance::new("sat→ahg-exists", game)
        .with_start("initial", with_singletons(n, groups)?)
        .with_note("constants", format!("alpha={alpha} beta_plus={bp} beta_minus={bm} gamma={gamma}"))
        .with_note("tail", "strict ascending below the listed sizes");
    for (i, g) in gadgets.iter().enumerate() {
        inst = g.attach(i + 1, inst)?;
    }
    Ok(inst)
}

pub(super) fn converge(f: &SatFormula, params: &ReductionParams) -> Result<NamedInstance, crate::instances::InstanceError> {
    let lits = LiteralAgents::new(f)?;
    let (m, p) = (f.num_clauses() as u64, f.num_vars as u64);
    let alpha = constant(params, "alpha", m, 5)?;
    let b1p = constant(params, "beta1_plus", m, 4)?;
    let b1m = constant(params, "beta1_minus", m, 3)?;
    let b2p = constant(params, "beta2_plus", m, 2)?;
    let b2m = constant(params, "beta2_minus", m, 1)?;
    decreasing(
        &["alpha", "beta1_plus", "beta1_minus", "beta2_plus", "beta2_minus"],
        &[alpha, b1p, b1m, b2p, b2m],
    )?;
    check_disjoint(&[
        ("alpha", alpha, m + 1, 2),
        ("beta1_plus", b1p, p, 2),
        ("beta1_minus", b1m, p, 2),
        ("beta2_plus", b2p, p, 2),
        ("beta2_minus", b2m, p, 2),
    ])?;

    let (m128, p128) = (m as u128, p as u128);
    let tri = |k: u128| k * (k + 1) / 2;
    let n = check_agents(
        4 * p128 + 1 + alpha as u128 * tri(m128 + 1) + [b1p, b1m, b2p, b2m].iter().map(|&b| b as u128).sum::<u128>() * tri(p128),
    )?;

    let k = |c: u64| us(c * alpha);
    // Size of Y_i^l, or of its negated counterpart.
    let y = |l: usize, positive: bool, i: u64| -> usize {
        let b = match (l, positive) {
            (1, true) => b1p,
            (1, false) => b1m,
            (_, true) => b2p,
            (_, false) => b2m,
        };
        us(i * b)
    };

    let mut t = Profiles::with_capacity(n);
    for i in 0..f.num_vars {
        let iv = i as u64 + 1;
        for positive in [true, false] {
            for l in 1..=2 {
                let a = LiteralAgents::id(i, positive, l - 1);
                let c = lits.cl(a);
                let mut keys = vec![k(c) + 2, k(c + 1) + 2, k(c + 1) + 1, k(c) + 1];
                let own = y(l, positive, iv);
                if l == 1 {
                    let other = y(2, positive, iv);
                    keys.extend([own + 2, other + 2, other + 1, own + 1]);
                } else if iv < p {
                    let (nx, nxb) = (y(1, true, iv + 1), y(1, false, iv + 1));
                    keys.extend([own + 2, nx + 2, nx + 1, nxb + 2, nxb + 1, own + 1]);
                } else {
                    keys.extend([own + 2, k(1) + 2, k(1) + 1, own + 1]);
                }
                keys.push(1);
                t.push(1, keys)?;
            }
        }
    }
    let (y1, y1b, km) = (y(1, true, 1), y(1, false, 1), k(m + 1));
    t.push(1, vec![km + 2, y1 + 2, y1 + 1, y1b + 2, y1b + 1, km + 1, 1])?;
    let mut groups = Vec::new();
    let mut block = |t: &mut Profiles<usize>, s: usize| -> Result<(), crate::instances::InstanceError> {
        groups.push(t.push(s, vec![s + 2, s + 1, s, 1])?);
        Ok(())
    };
    for j in 1..=m + 1 {
        block(&mut t, k(j))?;
    }
    for iv in 1..=p {
        for (l, positive) in [(1, true), (2, true), (1, false), (2, false)] {
            block(&mut t, y(l, positive, iv))?;
        }
    }
    debug_assert_eq!(t.len(), n);
    let game = AnonymousGame::new(n, t.profiles, t.profile_of)?;
    Ok(NamedInstance::new("sat→ahg-converge", game)
        .with_start("initial", with_singletons(n, groups)?)
        .with_note(
            "constants",
            format!("alpha={alpha} beta1_plus={b1p} beta1_minus={b1m} beta2_plus={b2p} beta2_minus={b2m}"),
        )
        .with_note("tail", "strict ascending below the listed sizes"))
}
