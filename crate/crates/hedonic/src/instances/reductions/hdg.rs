//! (3,B2)-SAT to diversity games: IS-sequence existence and convergence.
//!
//! Orders are built directly over the listed ratios; the full ratio domain
//! of these games is far too large to materialize.

use crate::core::AgentId;
use crate::games::{Color, DiversityGame, RatioKey};
use crate::instances::hdg_builder::r;
use crate::instances::{InstanceError, NamedInstance, SatFormula};

use super::{check_agents, constant, violation, with_singletons, Gadget, LiteralAgents, Profiles, ReductionParams};

struct Agents {
    t: Profiles<RatioKey>,
    colors: Vec<Color>,
}

impl Agents {
    fn new(n: usize) -> Self {
        Agents { t: Profiles::with_capacity(n), colors: Vec::with_capacity(n) }
    }

    /// `count` agents sharing `keys`, the first `reds` of them red.
    fn add(&mut self, count: u64, reds: u64, keys: Vec<RatioKey>) -> Result<Vec<AgentId>, InstanceError> {
        let ids = self.t.push(count as usize, keys)?;
        self.colors.extend((0..count).map(|k| if k < reds { Color::Red } else { Color::Blue }));
        Ok(ids)
    }

    fn one(&mut self, color: Color, keys: Vec<RatioKey>) -> Result<AgentId, InstanceError> {
        Ok(self.add(1, u64::from(color == Color::Red), keys)?[0])
    }

    fn build(self) -> Result<DiversityGame, InstanceError> {
        Ok(DiversityGame::new(self.colors, self.t.profiles, self.t.profile_of)?)
    }
}

fn need(ok: bool, what: &str) -> Result<(), InstanceError> {
    if ok {
        Ok(())
    } else {
        Err(violation(format!("need {what}")))
    }
}

pub(super) fn exists(f: &SatFormula, params: &ReductionParams) -> Result<NamedInstance, InstanceError> {
    let lits = LiteralAgents::new(f)?;
    let (m, p) = (f.num_clauses() as u64, f.num_vars as u64);
    let alpha = constant(params, "alpha", m, 2)?;
    let beta = constant(params, "beta", m, 4)?;
    let gamma = constant(params, "gamma", m, 7)?;
    let (a, b, g) = (alpha as u128, beta as u128, gamma as u128);
    let (m1, p1) = (m as u128, p as u128);
    need(a > 2 * m1 - 1, "alpha > 2m - 1")?;
    need(b > (3 * p1 - 2).max(3 * p1 * a + 3 * p1 - 2), "beta > max(3p - 2, 3p·alpha + 3p - 2)")?;
    need(g > (12 * p1 - 2).max(6 * p1 * b + 12 * p1 - 1), "gamma > max(12p - 2, 6p·beta + 12p - 1)")?;
    let n = check_agents(4 * p1 + m1 * a + 2 * p1 * b + 3 * g * p1 * (p1 + 1) / 2)?;

    let mut ag = Agents::new(n);
    for i in 0..f.num_vars {
        let iv = i as u64 + 1;
        for l in 0..2 {
            let c = lits.cl(LiteralAgents::id(i, true, l));
            ag.one(Color::Red, vec![r(2 * c, alpha + 1), r(3 * iv, beta + 2), r(3 * iv - 1, beta + 1), r(1, 1)])?;
        }
        for l in 0..2 {
            let c = lits.cl(LiteralAgents::id(i, false, l));
            let keys = vec![r(2 * c - 1, alpha + 1), r(3 * iv - 2, beta + 2), r(3 * iv - 2, beta + 1), r(0, 1)];
            ag.one(Color::Blue, keys)?;
        }
    }
    let mut groups = Vec::new();
    for j in 1..=m {
        let keys = vec![r(2 * j, alpha + 1), r(2 * j - 1, alpha + 1), r(2 * j - 1, alpha)];
        groups.push(ag.add(alpha, 2 * j - 1, keys)?);
    }
    let mut gadgets = Vec::new();
    for i in 1..=p {
        let pp = 6 * (p - i);
        let gs = i * gamma;
        let z = ag.one(
            Color::Red,
            vec![
                r(3 * i, beta + 2),
                r(pp + 2, gs + 2),
                r(pp + 4, gs + 1),
                r(pp + 6, gs + 2),
                r(pp + 6, gs + 1),
                r(pp + 2, gs + 1),
                r(3 * i - 1, beta + 1),
                r(3 * i - 2, beta),
            ],
        )?;
        let mut zg = vec![z];
        let keys = vec![r(3 * i, beta + 2), r(3 * i - 1, beta + 1), r(3 * i - 2, beta), r(3 * i - 3, beta - 1)];
        zg.extend(ag.add(beta - 1, 3 * i - 3, keys)?);
        let zb = ag.one(
            Color::Blue,
            vec![
                r(3 * i - 2, beta + 2),
                r(pp + 6, gs + 2),
                r(pp + 3, gs + 1),
                r(pp + 2, gs + 2),
                r(pp + 1, gs + 1),
                r(pp + 5, gs + 1),
                r(3 * i - 2, beta + 1),
                r(3 * i - 2, beta),
            ],
        )?;
        let mut zbg = vec![zb];
        let keys = vec![r(3 * i - 2, beta + 2), r(3 * i - 2, beta + 1), r(3 * i - 2, beta), r(3 * i - 2, beta - 1)];
        zbg.extend(ag.add(beta - 1, 3 * i - 2, keys)?);
        let d1 = ag.add(gs, pp + 1, vec![r(pp + 2, gs + 2), r(pp + 2, gs + 1), r(pp + 1, gs + 1), r(pp + 1, gs)])?;
        let d2 = ag.add(gs, pp + 3, vec![r(pp + 4, gs + 1), r(pp + 3, gs + 1), r(pp + 3, gs)])?;
        let keys = vec![r(pp + 6, gs + 2), r(pp + 6, gs + 1), r(pp + 5, gs + 1), r(pp + 5, gs)];
        let d3 = ag.add(gs, pp + 5, keys)?;
        gadgets.push(Gadget { z, zb, g: [d1.clone(), d2.clone(), d3.clone()] });
        groups.extend([zg, zbg, d1, d2, d3]);
    }
    let game = ag.build()?;
    let mut inst = NamedInstance::new("sat→hdg-exists", game)
        .with_start("initial", with_singletons(n, groups)?)
        .with_note("constants", format!("alpha={alpha} beta={beta} gamma={gamma}"))
        .with_note("tail", "strict ascending below the listed ratios");
    for (i, gd) in gadgets.iter().enumerate() {
        inst = gd.attach(i + 1, inst)?;
    }
    Ok(inst)
}

pub(super) fn converge(f: &SatFormula, params: &ReductionParams) -> Result<NamedInstance, InstanceError> {
    let lits = LiteralAgents::new(f)?;
    let (m, p) = (f.num_clauses() as u64, f.num_vars as u64);
    let alpha = constant(params, "alpha", m, 3)?;
    let b1p = constant(params, "beta1_plus", m, 5)?;
    let b1m = constant(params, "beta1_minus", m, 7)?;
    let b2 = constant(params, "beta2", m, 9)?;
    let (a, bp, bm, bb) = (alpha as u128, b1p as u128, b1m as u128, b2 as u128);
    let (m1, p1) = (m as u128, p as u128);
    need(a > 6 * m1 + 2, "alpha > 6m + 2")?;
    need(bp > (4 * p1 - 2).max((2 * p1 + 1) * a + 4 * p1), "beta1_plus > max(4p - 2, (2p + 1)·alpha + 4p)")?;
    need(bm > (4 * p1 - 2).max(2 * p1 * bp + 2 * p1 - 2), "beta1_minus > max(4p - 2, 2p·beta1_plus + 2p - 2)")?;
    need(bb > (3 * p1 - 2).max(3 * p1 * bm + 4 * p1), "beta2 > max(3p - 2, 3p·beta1_minus + 4p)")?;
    let n = check_agents(4 * p1 + 1 + (m1 + 1) * a + p1 * (bp + bm) + 2 * p1 * bb)?;

    // Clause part of a literal agent's order; `shift` is 0 for red agents
    // and 1 for blue ones.
    let kpart = |c: u64, shift: u64| {
        let (x, y) = (3 * c - shift, 3 * (c + 1) - shift);
        vec![r(x, alpha + 2), r(x - 1, alpha + 2), r(y, alpha + 2), r(y - 1, alpha + 2), r(y - 1, alpha + 1), r(x - 1, alpha + 1)]
    };
    let mut ag = Agents::new(n);
    for i in 0..f.num_vars {
        let iv = i as u64 + 1;
        let nx = 2 * (iv + 1);
        // y_i^1, y_i^2
        let c = lits.cl(LiteralAgents::id(i, true, 0));
        let mut keys = kpart(c, 0);
        keys.extend([
            r(2 * iv + 1, b1p + 2),
            r(2 * iv, b1p + 2),
            r(3 * iv, b2 + 2),
            r(3 * iv - 1, b2 + 1),
            r(2 * iv, b1p + 1),
            r(1, 1),
        ]);
        ag.one(Color::Red, keys)?;
        let c = lits.cl(LiteralAgents::id(i, true, 1));
        let mut keys = kpart(c, 0);
        if iv < p {
            keys.extend([
                r(3 * iv, b2 + 2),
                r(nx + 1, b1p + 2),
                r(nx, b1p + 2),
                r(nx, b1p + 1),
                r(nx + 1, b1m + 2),
                r(nx, b1m + 2),
                r(nx, b1m + 1),
                r(3 * iv - 1, b2 + 1),
            ]);
        } else {
            keys.extend([r(3 * p, b2 + 2), r(3, alpha + 2), r(2, alpha + 2), r(2, alpha + 1), r(3 * p - 1, b2 + 1)]);
        }
        keys.push(r(1, 1));
        ag.one(Color::Red, keys)?;
        // ¬y_i^1, ¬y_i^2
        let c = lits.cl(LiteralAgents::id(i, false, 0));
        let mut keys = kpart(c, 1);
        keys.extend([
            r(2 * iv, b1m + 2),
            r(2 * iv - 1, b1m + 2),
            r(3 * iv - 2, b2 + 2),
            r(3 * iv - 2, b2 + 1),
            r(2 * iv - 1, b1m + 1),
            r(0, 1),
        ]);
        ag.one(Color::Blue, keys)?;
        let c = lits.cl(LiteralAgents::id(i, false, 1));
        let mut keys = kpart(c, 1);
        if iv < p {
            keys.extend([
                r(3 * iv - 2, b2 + 2),
                r(nx, b1p + 2),
                r(nx - 1, b1p + 2),
                r(nx - 1, b1p + 1),
                r(nx, b1m + 2),
                r(nx - 1, b1m + 2),
                r(nx - 1, b1m + 1),
                r(3 * iv - 2, b2 + 1),
            ]);
        } else {
            keys.extend([r(3 * p - 2, b2 + 2), r(2, alpha + 2), r(1, alpha + 2), r(1, alpha + 1), r(3 * p - 2, b2 + 1)]);
        }
        keys.push(r(0, 1));
        ag.one(Color::Blue, keys)?;
    }
    ag.one(
        Color::Red,
        vec![
            r(3 * m + 3, alpha + 2),
            r(3 * m + 2, alpha + 2),
            r(3, b1p + 2),
            r(2, b1m + 2),
            r(2, b1p + 1),
            r(2, b1m + 1),
            r(3 * m + 2, alpha + 1),
            r(1, 1),
        ],
    )?;
    let mut groups = Vec::new();
    for j in 1..=m + 1 {
        let keys = vec![
            r(3 * j, alpha + 2),
            r(3 * j - 1, alpha + 2),
            r(3 * j - 2, alpha + 2),
            r(3 * j - 1, alpha + 1),
            r(3 * j - 2, alpha + 1),
            r(3 * j - 2, alpha),
        ];
        groups.push(ag.add(alpha, 3 * j - 2, keys)?);
    }
    for i in 1..=p {
        let keys = vec![
            r(2 * i + 1, b1p + 2),
            r(2 * i, b1p + 2),
            r(2 * i, b1p + 1),
            r(2 * i - 1, b1p + 1),
            r(2 * i - 1, b1p),
        ];
        groups.push(ag.add(b1p, 2 * i - 1, keys)?);
        groups.push(ag.add(b2, 3 * i - 2, vec![r(3 * i, b2 + 2), r(3 * i - 1, b2 + 1), r(3 * i - 2, b2)])?);
        let keys = vec![
            r(2 * i, b1m + 2),
            r(2 * i - 1, b1m + 2),
            r(2 * i, b1m + 1),
            r(2 * i - 1, b1m + 1),
            r(2 * i - 1, b1m),
        ];
        groups.push(ag.add(b1m, 2 * i - 1, keys)?);
        let keys = vec![r(3 * i - 2, b2 + 2), r(3 * i - 2, b2 + 1), r(3 * i - 2, b2)];
        groups.push(ag.add(b2, 3 * i - 2, keys)?);
    }
    let game = ag.build()?;
    Ok(NamedInstance::new("sat→hdg-converge", game)
        .with_start("initial", with_singletons(n, groups)?)
        .with_note("constants", format!("alpha={alpha} beta1_plus={b1p} beta1_minus={b1m} beta2={b2}"))
        .with_note("clause index", "second-occurrence agents use the clause of their own occurrence")
        .with_note("tail", "strict ascending below the listed ratios"))
}
