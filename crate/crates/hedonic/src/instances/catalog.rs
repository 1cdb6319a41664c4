//! The fixed instances. Agents are numbered from 0; comments use the
//! 1-based names of the original constructions where that helps.

use crate::core::{AgentId, Coalition, DeviationMove, Partition};
use crate::games::{
    ratio_domain, AnonymousGame, Color, DichotomousGame, DiversityGame, FractionalGame, RatioKey, Rational, Tail,
    WeakOrder,
};

use super::hdg_builder::{homogeneous_coalition, r, HdgBuilder, OrderSpec, ScriptWriter};
use super::{Claim, InstanceError, NamedInstance};

use Color::{Blue, Red};

pub fn catalog_ids() -> Vec<&'static str> {
    vec![
        "ahg15",
        "ahg7",
        "hdg26-sp-strict-solitary",
        "hdg239-sp-strict-singletons",
        "hdg12-no-sp",
        "hdg10-weak",
        "hdg10-forced-strict",
        "hdg10-forced-weak-sp",
        "fhg15",
        "fhg-clique(3)",
        "fhg-triangle",
        "dhg3",
    ]
}

/// Builds a bundled instance. `fhg-clique(k)` accepts any k ≥ 1.
pub fn build(id: &str) -> Result<NamedInstance, InstanceError> {
    if let Some(k) = id.strip_prefix("fhg-clique(").and_then(|s| s.strip_suffix(')')) {
        let k: usize = k.parse().map_err(|_| InstanceError::UnknownId(id.into()))?;
        if k == 0 {
            return Err(InstanceError::UnknownId(id.into()));
        }
        return fhg_clique(k);
    }
    match id {
        "ahg15" => ahg15(),
        "ahg7" => ahg7(),
        "hdg26-sp-strict-solitary" => hdg26(),
        "hdg239-sp-strict-singletons" => hdg239(),
        "hdg12-no-sp" => hdg12(),
        "hdg10-weak" => hdg10_weak(),
        "hdg10-forced-strict" => hdg10_forced(true),
        "hdg10-forced-weak-sp" => hdg10_forced(false),
        "fhg15" => fhg15(),
        "fhg-triangle" => fhg_triangle(),
        "dhg3" => dhg3(),
        _ => Err(InstanceError::UnknownId(id.into())),
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

/// Partition from 1-based groups.
fn one_based(n: usize, groups: &[&[usize]]) -> Result<Partition, InstanceError> {
    Ok(Partition::new(n, groups.iter().map(|g| g.iter().map(|a| a - 1).collect()).collect())?)
}

fn groups_of(p: &Partition) -> Vec<Vec<AgentId>> {
    p.to_vecs()
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// Full partition of the writer's current state.
fn writer_partition(n: usize, w: &ScriptWriter) -> Result<Partition, InstanceError> {
    let mut seen = vec![false; n];
    let mut groups = Vec::new();
    for a in 0..n {
        if !seen[a] {
            let g = w.coalition_of(a);
            for &x in &g {
                seen[x] = true;
            }
            groups.push(g);
        }
    }
    Ok(Partition::new(n, groups)?)
}

fn ahg_order(listed: &[usize], axis: &[usize]) -> Result<WeakOrder<usize>, InstanceError> {
    Ok(WeakOrder::complete_single_peaked(listed.iter().map(|&k| vec![k]).collect(), axis)?)
}

fn ahg15() -> Result<NamedInstance, InstanceError> {
    let axis = vec![1, 2, 3, 13, 12, 15, 14, 11, 10, 9, 8, 7, 6, 5, 4];
    let o1 = ahg_order(&[2, 3, 13, 12, 1], &axis)?;
    let o2 = ahg_order(&[13, 3, 2, 1, 12], &axis)?;
    let o34 = ahg_order(&[3, 2, 1], &axis)?;
    let rest = ahg_order(&[13, 12, 15, 14, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1], &axis)?;
    let mut orders = vec![o1, o2, o34.clone(), o34];
    orders.extend(std::iter::repeat_n(rest, 11));
    let game = AnonymousGame::from_orders(orders)?;
    let start = one_based(15, &[&[1], &[2, 3, 4], &range(5, 15)])?;
    let mut w = ScriptWriter::with_groups(&groups_of(&start));
    // 1 → {5..15}, 2 → {1,5..15}, 1 → {3,4}, 2 alone, 1 → {2}, 2 → {3,4}
    w.join(0, 4);
    w.join(1, 0);
    w.join(0, 2);
    w.alone(1);
    w.join(0, 1);
    w.join(1, 2);
    Ok(NamedInstance::new("ahg15", game)
        .with_start("cycle", start)
        .with_script("cycle6", w.into_moves())
        .with_claims(vec![
            Claim::NoIsPartition,
            Claim::CycleScript { script: s("cycle6"), start: s("cycle") },
            Claim::Strict { holds: true },
            Claim::AxisSp { axis },
        ]))
}

fn ahg7() -> Result<NamedInstance, InstanceError> {
    let axis = vec![1, 2, 3, 5, 4, 6, 7];
    let o1 = ahg_order(&[2, 3, 5, 4, 1], &axis)?;
    let o2 = ahg_order(&[5, 3, 2, 1, 4], &axis)?;
    let o34 = ahg_order(&[3, 2, 1], &axis)?;
    let rest = ahg_order(&[5, 4, 3, 2, 1], &axis)?;
    let game = AnonymousGame::from_orders(vec![o1, o2, o34.clone(), o34, rest.clone(), rest.clone(), rest])?;
    let cycle_start = one_based(7, &[&[1, 2], &[3, 4], &[5, 6, 7]])?;

    let mut w = ScriptWriter::with_groups(&groups_of(&cycle_start));
    // 2 → {3,4}, 1 → {5,6,7}, 2 → {1,5,6,7}, 1 → {3,4}, 2 alone, 1 → {2}
    w.join(1, 2);
    w.join(0, 4);
    w.join(1, 0);
    w.join(0, 2);
    w.alone(1);
    w.join(0, 1);
    let cycle = w.into_moves();

    let mut w = ScriptWriter::new();
    w.join(1, 0);
    w.join(3, 2);
    w.join(5, 4);
    w.join(6, 4);
    let from_singletons = w.into_moves();

    let mut w = ScriptWriter::with_groups(&[(0..7).collect()]);
    w.alone(0);
    w.join(1, 0);
    w.alone(2);
    w.join(3, 2);
    let from_grand = w.into_moves();

    Ok(NamedInstance::new("ahg7", game)
        .with_start("cycle", cycle_start)
        .with_start("singletons", Partition::singletons(7))
        .with_start("grand", Partition::grand(7))
        .with_start("is-witness", one_based(7, &[&[1], &[3, 5, 6], &[2, 4, 7]])?)
        .with_script("cycle6", cycle)
        .with_script("ahg7-from-singletons", from_singletons)
        .with_script("ahg7-from-grand", from_grand)
        .with_claims(vec![
            Claim::CycleScript { script: s("cycle6"), start: s("cycle") },
            Claim::ScriptReaches { script: s("ahg7-from-singletons"), start: s("singletons"), end: s("cycle") },
            Claim::ScriptReaches { script: s("ahg7-from-grand"), start: s("grand"), end: s("cycle") },
            Claim::Stable { start: s("is-witness") },
            Claim::CycleReachable { start: s("singletons") },
            Claim::Strict { holds: true },
            Claim::AxisSp { axis },
        ]))
}

fn sp(keys: &[(u64, u64)]) -> OrderSpec {
    OrderSpec::SinglePeaked(keys.iter().map(|&(p, q)| r(p, q)).collect())
}

/// Agents of the four-deviator construction, shared by the 26- and
/// 239-agent instances.
struct HdgCore {
    b1: AgentId,
    b2: AgentId,
    r1: AgentId,
    r2: AgentId,
    c1r: Vec<AgentId>,
    c1b: Vec<AgentId>,
    c2: Vec<AgentId>,
    c3r: Vec<AgentId>,
    c3b: Vec<AgentId>,
    c4: Vec<AgentId>,
}

impl HdgCore {
    /// `extended` appends the singleton fraction to every order, as the
    /// assembled variant requires.
    fn add(b: &mut HdgBuilder, extended: bool) -> Self {
        let wrap = |mut v: Vec<(u64, u64)>, head: &[(u64, u64)], tail: &[(u64, u64)]| {
            if extended {
                v.splice(0..0, head.iter().copied());
                v.extend_from_slice(tail);
            }
            sp(&v)
        };
        let ext = |v: Vec<(u64, u64)>, tail: &[(u64, u64)]| wrap(v, &[], tail);
        let b1 = b.add(Blue, ext(vec![(3, 8), (5, 7), (5, 6), (2, 7)], &[(0, 1)]));
        let b2 = b.add(Blue, ext(vec![(5, 7), (4, 7), (1, 2), (5, 6)], &[(0, 1)]));
        let r1 = b.add(Red, ext(vec![(4, 7), (1, 4), (1, 7), (2, 3)], &[(1, 1)]));
        let r2 = b.add(Red, ext(vec![(1, 4), (3, 8), (3, 7), (1, 7)], &[(1, 1)]));
        let c1 = ext(vec![(3, 8), (3, 7), (1, 3)], &[(1, 5), (0, 1), (1, 2), (1, 1)]);
        let c1r = b.add_many(2, Red, &c1);
        let c1b = b.add_many(4, Blue, &c1);
        let c2 = b.add_many(5, Red, &wrap(vec![(5, 7), (5, 6), (1, 1)], &[(2, 3)], &[(1, 2)]));
        let c3 = ext(vec![(4, 7), (1, 2), (3, 5)], &[(3, 4), (3, 10), (2, 9), (1, 8), (1, 1), (0, 1)]);
        let c3r = b.add_many(3, Red, &c3);
        let c3b = b.add_many(2, Blue, &c3);
        let c4 = b.add_many(6, Blue, &wrap(vec![(1, 4), (1, 7), (0, 1)], &[(1, 3)], &[(1, 2)]));
        HdgCore { b1, b2, r1, r2, c1r, c1b, c2, c3r, c3b, c4 }
    }

    fn c1(&self) -> Vec<AgentId> {
        [self.c1r.clone(), self.c1b.clone()].concat()
    }

    fn c3(&self) -> Vec<AgentId> {
        [self.c3r.clone(), self.c3b.clone()].concat()
    }

    /// Four moves from `w`'s current state; `first_half` selects moves 1–4
    /// of the eight-move cycle, otherwise 5–8.
    fn half_cycle(&self, w: &mut ScriptWriter, first_half: bool) {
        if first_half {
            w.join(self.r2, self.c4[0]);
            w.join(self.r1, self.c3r[0]);
            w.join(self.b1, self.c2[0]);
            w.join(self.r2, self.c1r[0]);
        } else {
            w.join(self.b2, self.c2[0]);
            w.join(self.r1, self.c4[0]);
            w.join(self.b1, self.c1r[0]);
            w.join(self.b2, self.c3r[0]);
        }
    }
}

fn hdg26() -> Result<NamedInstance, InstanceError> {
    let mut b = HdgBuilder::new();
    let c = HdgCore::add(&mut b, false);
    let game = b.build()?;
    let n = b.n();
    let start = vec![
        [c.c1(), vec![c.b1, c.r2]].concat(),
        c.c2.clone(),
        [c.c3(), vec![c.b2]].concat(),
        [c.c4.clone(), vec![c.r1]].concat(),
    ];
    let mut w = ScriptWriter::with_groups(&start);
    c.half_cycle(&mut w, true);
    c.half_cycle(&mut w, false);
    Ok(NamedInstance::new("hdg26-sp-strict-solitary", game)
        .with_start("cycle", Partition::new(n, start)?)
        .with_script("cycle8", w.into_moves())
        .with_claims(vec![
            Claim::CycleScript { script: s("cycle8"), start: s("cycle") },
            Claim::SolitaryHomogeneous { script: s("cycle8") },
            Claim::Strict { holds: true },
            Claim::NaturalSp { holds: true },
        ]))
}

fn hdg239() -> Result<NamedInstance, InstanceError> {
    let mut b = HdgBuilder::new();
    let c = HdgCore::add(&mut b, true);
    let mut w = ScriptWriter::new();

    homogeneous_coalition(&mut b, &mut w, &c.c1b, Blue);
    for &x in &c.c1r {
        w.join(x, c.c1b[0]);
    }
    homogeneous_coalition(&mut b, &mut w, &c.c2, Red);
    homogeneous_coalition(&mut b, &mut w, &c.c4, Blue);

    // C3: seven helpers hold the place of the blues until the reds are in.
    let a_spec = sp(&[(4, 13), (1, 3), (3, 11), (0, 1), (1, 2), (1, 1)]);
    let c31 = b.add_many(7, Blue, &a_spec);
    homogeneous_coalition(&mut b, &mut w, &c31, Blue);
    for &x in &c.c3r {
        w.join(x, c31[0]);
    }
    let mut hosts = Vec::new();
    for _ in 0..7 {
        let blues = b.add_many(8, Blue, &a_spec);
        homogeneous_coalition(&mut b, &mut w, &blues, Blue);
        for x in b.add_many(4, Red, &a_spec) {
            w.join(x, blues[0]);
        }
        hosts.push(blues[0]);
    }
    for (&x, &h) in c31.iter().zip(&hosts) {
        w.join(x, h);
    }
    for &x in &c.c3b {
        w.join(x, c.c3r[0]);
    }
    w.join(c.r2, c.c1r[0]);
    w.join(c.b1, c.c2[0]);
    w.join(c.b2, c.c3r[0]);
    w.join(c.r1, c.c3r[0]);

    let n = b.n();
    let state5 = writer_partition(n, &w)?;
    let assembly = w.into_moves();
    let mut w = ScriptWriter::with_groups(&groups_of(&state5));
    c.half_cycle(&mut w, false);
    c.half_cycle(&mut w, true);
    let game = b.build()?;
    Ok(NamedInstance::new("hdg239-sp-strict-singletons", game)
        .with_start("singletons", Partition::singletons(n))
        .with_start("cycle", state5)
        .with_script("assembly", assembly)
        .with_script("cycle8", w.into_moves())
        .with_claims(vec![
            Claim::ScriptReaches { script: s("assembly"), start: s("singletons"), end: s("cycle") },
            Claim::CycleScript { script: s("cycle8"), start: s("cycle") },
            Claim::Strict { holds: true },
            Claim::NaturalSp { holds: true },
        ]))
}

fn strict_asc(keys: &[(u64, u64)]) -> Result<WeakOrder<RatioKey>, InstanceError> {
    Ok(WeakOrder::strict(keys.iter().map(|&(p, q)| r(p, q)).collect(), Tail::Ascending)?)
}

fn hdg12() -> Result<NamedInstance, InstanceError> {
    // b1 b2 | C1: red 2, blues 3 4 | C2: red 5, blue 6 | C3: red 7, blues 8..11
    let colors = [
        Blue, Blue, Red, Blue, Blue, Red, Blue, Red, Blue, Blue, Blue, Blue,
    ]
    .to_vec();
    let with_end = |keys: &[(u64, u64)], c: Color| {
        let mut v = keys.to_vec();
        v.push(if c == Red { (1, 1) } else { (0, 1) });
        strict_asc(&v)
    };
    let c1 = [(1, 5), (1, 4), (1, 3), (1, 2)];
    let c2 = [(1, 3), (1, 2)];
    let c3 = [(1, 7), (1, 6), (1, 5), (1, 4), (1, 3), (1, 2)];
    let mut orders = vec![
        strict_asc(&[(1, 5), (1, 3), (1, 7), (1, 6), (1, 4), (0, 1)])?,
        strict_asc(&[(1, 7), (1, 3), (1, 5), (1, 4), (1, 6), (0, 1)])?,
    ];
    for (a, &col) in colors.iter().enumerate().skip(2) {
        let keys: &[(u64, u64)] = match a {
            2..=4 => &c1,
            5 | 6 => &c2,
            _ => &c3,
        };
        orders.push(with_end(keys, col)?);
    }
    let game = DiversityGame::from_orders(colors, orders)?;
    let mut w = ScriptWriter::new();
    w.join(2, 3);
    w.join(4, 2);
    w.join(5, 6);
    w.join(7, 8);
    for a in 9..12 {
        w.join(a, 7);
    }
    w.join(0, 2);
    w.join(1, 5);
    let reach = w.into_moves();
    let cycle_start = Partition::new(12, vec![vec![0, 2, 3, 4], vec![1, 5, 6], range(7, 11)])?;
    let mut w = ScriptWriter::with_groups(&groups_of(&cycle_start));
    w.join(0, 7);
    w.join(1, 7);
    w.join(0, 5);
    w.join(1, 2);
    w.join(0, 2);
    w.join(1, 5);
    Ok(NamedInstance::new("hdg12-no-sp", game)
        .with_start("singletons", Partition::singletons(12))
        .with_start("cycle", cycle_start)
        .with_script("reach", reach)
        .with_script("cycle6", w.into_moves())
        .with_claims(vec![
            Claim::ScriptReaches { script: s("reach"), start: s("singletons"), end: s("cycle") },
            Claim::CycleScript { script: s("cycle6"), start: s("cycle") },
            Claim::SolitaryHomogeneous { script: s("reach") },
            Claim::SolitaryHomogeneous { script: s("cycle6") },
            Claim::Strict { holds: true },
            Claim::NaturalSp { holds: false },
        ])
        .with_note("tail", "ascending strict tail"))
}

// r = 0, b = 1 | C1: reds 2 3 | C2: red 4, blues 5 6 7 | C3: blues 8 9
const HDG10_COLORS: [Color; 10] = [Red, Blue, Red, Red, Red, Blue, Blue, Blue, Blue, Blue];

fn classes(v: &[&[(u64, u64)]]) -> Vec<Vec<RatioKey>> {
    v.iter().map(|c| c.iter().map(|&(p, q)| r(p, q)).collect()).collect()
}

fn hdg10_weak() -> Result<NamedInstance, InstanceError> {
    let mut b = HdgBuilder::new();
    let c2 = |end: (u64, u64)| {
        OrderSpec::Plateau(classes(&[&[(2, 5)], &[(1, 3), (1, 4), (1, 5)], &[(1, 2)], &[end]]))
    };
    let specs = [
        OrderSpec::Plateau(classes(&[&[(3, 4)], &[(2, 5)], &[(1, 4), (1, 3)], &[(1, 1)]])),
        OrderSpec::Plateau(classes(&[&[(1, 4)], &[(1, 5)], &[(1, 2), (2, 3), (3, 4)], &[(0, 1)]])),
        OrderSpec::Plateau(classes(&[&[(3, 4)], &[(2, 3)], &[(1, 2), (1, 3)], &[(1, 1)]])),
        c2((1, 1)),
        c2((0, 1)),
        OrderSpec::Plateau(classes(&[&[(1, 4)], &[(1, 3)], &[(1, 2)], &[(0, 1)]])),
    ];
    let spec_of = [0, 1, 2, 2, 3, 4, 4, 4, 5, 5];
    for (a, &col) in HDG10_COLORS.iter().enumerate() {
        b.add(col, specs[spec_of[a]].clone());
    }
    let game = b.build()?;
    let mut w = ScriptWriter::new();
    w.join(1, 2);
    w.join(3, 8);
    w.join(9, 8);
    w.join(3, 1);
    w.join(4, 5);
    w.join(6, 4);
    w.join(7, 4);
    w.join(0, 4);
    let reach = w.into_moves();
    let state5 = Partition::new(10, vec![vec![1, 2, 3], vec![0, 4, 5, 6, 7], vec![8, 9]])?;
    let mut w = ScriptWriter::with_groups(&groups_of(&state5));
    w.join(0, 2);
    w.join(1, 4);
    w.join(0, 8);
    w.join(1, 8);
    w.join(0, 4);
    w.join(1, 2);
    Ok(NamedInstance::new("hdg10-weak", game)
        .with_start("singletons", Partition::singletons(10))
        .with_start("cycle", state5)
        .with_script("reach", reach)
        .with_script("cycle6", w.into_moves())
        .with_claims(vec![
            Claim::ScriptReaches { script: s("reach"), start: s("singletons"), end: s("cycle") },
            Claim::CycleScript { script: s("cycle6"), start: s("cycle") },
            Claim::SolitaryHomogeneous { script: s("reach") },
            Claim::SolitaryHomogeneous { script: s("cycle6") },
            Claim::Strict { holds: false },
            Claim::NaturalSp { holds: true },
        ])
        .with_note("tail", "plateau completion"))
}

fn hdg10_forced(strict: bool) -> Result<NamedInstance, InstanceError> {
    let orders: Vec<WeakOrder<RatioKey>> = if strict {
        let c2 = strict_asc(&[(2, 5), (1, 5), (1, 4)])?;
        let c1 = strict_asc(&[(3, 4), (2, 3), (1, 1)])?;
        let c3 = strict_asc(&[(1, 4), (1, 3), (0, 1)])?;
        let mut v = vec![
            strict_asc(&[(3, 4), (2, 5), (1, 4), (1, 3), (1, 1)])?,
            strict_asc(&[(1, 4), (1, 5), (3, 4), (2, 3), (0, 1)])?,
            c1.clone(),
            c1,
        ];
        v.extend(std::iter::repeat_n(c2, 4));
        v.extend([c3.clone(), c3]);
        v
    } else {
        let domain = ratio_domain(4, 10);
        let flat = WeakOrder::new(Vec::new(), Tail::Bottom)?;
        let mut v = vec![
            WeakOrder::complete_plateau(classes(&[&[(3, 4)], &[(2, 5)], &[(1, 4), (1, 3)], &[(1, 1)]]), &domain)?,
            WeakOrder::complete_plateau(classes(&[&[(1, 4)], &[(1, 5)], &[(3, 4), (2, 3)], &[(0, 1)]]), &domain)?,
        ];
        v.extend(std::iter::repeat_n(flat, 8));
        v
    };
    let game = DiversityGame::from_orders(HDG10_COLORS.to_vec(), orders)?;
    let start = Partition::new(10, vec![vec![0, 2, 3], vec![1, 4, 5, 6, 7], vec![8, 9]])?;
    let mut w = ScriptWriter::with_groups(&groups_of(&start));
    w.join(0, 8);
    w.join(1, 8);
    w.join(0, 4);
    w.join(1, 2);
    w.join(0, 2);
    w.join(1, 4);
    let (id, restriction, note) = if strict {
        ("hdg10-forced-strict", Claim::Strict { holds: true }, "ascending strict tail")
    } else {
        ("hdg10-forced-weak-sp", Claim::NaturalSp { holds: true }, "plateau completion; others indifferent")
    };
    Ok(NamedInstance::new(id, game)
        .with_start("cycle", start)
        .with_script("cycle6", w.into_moves())
        .with_claims(vec![
            Claim::ForcedCycle { script: s("cycle6"), start: s("cycle") },
            Claim::CycleScript { script: s("cycle6"), start: s("cycle") },
            Claim::CycleReachable { start: s("cycle") },
            restriction,
        ])
        .with_note("tail", note))
}

/// Weighted pairs of five triangles in a ring; `base` is each triangle's
/// first id and `t` their count.
pub(crate) fn triangle_ring_pairs(base: &[AgentId]) -> Vec<(AgentId, AgentId, Rational)> {
    let t = base.len();
    let w = Rational::integer;
    let mut pairs = Vec::new();
    for i in 0..t {
        let (a, b, c) = (base[i], base[i] + 1, base[i] + 2);
        let j = (i + 1) % t;
        let (a2, b2, c2) = (base[j], base[j] + 1, base[j] + 2);
        pairs.extend([(a, b, w(228)), (b, c, w(228)), (a, c, w(228))]);
        pairs.extend([(a, a2, w(436)), (a, b2, w(228)), (a, c2, w(248))]);
        pairs.extend([(b, a2, w(223)), (b, b2, w(171)), (b, c2, w(236))]);
        pairs.extend([(c, a2, w(223)), (c, b2, w(171)), (c, c2, w(188))]);
    }
    pairs
}

fn fhg15() -> Result<NamedInstance, InstanceError> {
    let base: Vec<AgentId> = (0..5).map(|i| 3 * i).collect();
    let game = FractionalGame::symmetric(15, Rational::integer(-2251), triangle_ring_pairs(&base))?;
    let tri = |i: usize| -> Vec<AgentId> { (3 * i..3 * i + 3).collect() };
    // (N5 ∪ N1, N2, N3, N4)
    let start = Partition::new(15, vec![[tri(4), tri(0)].concat(), tri(1), tri(2), tri(3)])?;
    let mut w = ScriptWriter::with_groups(&groups_of(&start));
    for i in 0..5 {
        let host = 3 * ((i + 1) % 5);
        for d in 0..3 {
            w.join(3 * i + d, host);
        }
    }
    let moves = w.into_moves();
    Ok(NamedInstance::new("fhg15", game)
        .with_start("cycle", start)
        .with_start("grand", Partition::grand(15))
        .with_script("rotation", moves[..3].to_vec())
        .with_script("cycle15", moves)
        .with_claims(vec![
            Claim::NoIsPartition,
            Claim::CycleScript { script: s("cycle15"), start: s("cycle") },
        ]))
}

/// Complete simple symmetric graph on k(k+1)/2 agents. `phase1` forms
/// coalitions of sizes 1..=k from singletons; `phase2` then moves every
/// agent of the j-th coalition, in turn, through each larger one.
pub fn fhg_clique(k: usize) -> Result<NamedInstance, InstanceError> {
    let n = k * (k + 1) / 2;
    let game = FractionalGame::new(n, Rational::one(), Vec::new())?;
    let block = |j: usize| -> Vec<AgentId> { (j * (j - 1) / 2..j * (j + 1) / 2).collect() };
    let mut w = ScriptWriter::new();
    for j in 2..=k {
        let c = block(j);
        for &a in &c[1..] {
            w.join(a, c[0]);
        }
    }
    let mid = writer_partition(n, &w)?;
    let phase1 = w.into_moves();
    let mut w = ScriptWriter::with_groups(&groups_of(&mid));
    for j in 1..k {
        for a in block(j) {
            for t in j + 1..=k {
                w.join(a, block(t)[0]);
            }
        }
    }
    let id = format!("fhg-clique({k})");
    Ok(NamedInstance::new(id, game)
        .with_start("singletons", Partition::singletons(n))
        .with_start("phase1-end", mid)
        .with_start("grand", Partition::grand(n))
        .with_script("phase1", phase1)
        .with_script("phase2", w.into_moves())
        .with_claims(vec![
            Claim::ScriptReaches { script: s("phase1"), start: s("singletons"), end: s("phase1-end") },
            Claim::ScriptReaches { script: s("phase2"), start: s("phase1-end"), end: s("grand") },
        ]))
}

fn fhg_triangle() -> Result<NamedInstance, InstanceError> {
    let game = FractionalGame::from_arcs(3, &[(0, 1), (1, 2), (2, 0)])?;
    let cycle_start = Partition::new(3, vec![vec![0, 1], vec![2]])?;
    let c = |v: Vec<AgentId>| Coalition::new(v).expect("static coalition");
    Ok(NamedInstance::new("fhg-triangle", game)
        .with_start("singletons", Partition::singletons(3))
        .with_start("cycle", cycle_start)
        .with_script("reach", vec![DeviationMove::join(0, c(vec![1]))])
        .with_script(
            "cycle3",
            vec![
                DeviationMove::join(1, c(vec![2])),
                DeviationMove::join(2, c(vec![0])),
                DeviationMove::join(0, c(vec![1])),
            ],
        )
        .with_claims(vec![
            Claim::ScriptReaches { script: s("reach"), start: s("singletons"), end: s("cycle") },
            Claim::CycleScript { script: s("cycle3"), start: s("cycle") },
            Claim::CycleReachable { start: s("singletons") },
        ]))
}

fn dhg3() -> Result<NamedInstance, InstanceError> {
    let game = DichotomousGame::new(vec![vec![vec![0, 1]], vec![vec![1, 2]], vec![vec![0, 2]]])?;
    Ok(NamedInstance::new("dhg3", game)
        .with_start("singletons", Partition::singletons(3))
        .with_start("grand", Partition::grand(3))
        .with_claims(vec![
            Claim::UniqueIs { start: s("grand") },
            Claim::NoPathToStability { start: s("singletons") },
            Claim::CycleReachable { start: s("singletons") },
            Claim::PathToStability { start: s("grand") },
        ]))
}
