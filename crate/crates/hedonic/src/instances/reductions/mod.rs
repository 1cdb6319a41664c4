//! Instance generators for the hardness reductions. Each kind turns a SAT
//! formula or an exact-cover instance into a hedonic game with a start
//! partition; numeric side conditions on the constants are checked before
//! any agent is allocated.

mod ahg;
mod dhg;
mod fhg;
mod hdg;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::core::{AgentId, CoreError, Partition, MAX_AGENTS};
use crate::games::{Tail, WeakOrder};

use super::{InstanceError, NamedInstance, SatFormula, X3CInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionKind {
    SatAhgExists,
    SatAhgConverge,
    SatHdgExists,
    SatHdgConverge,
    X3cSymFhgExists,
    X3cSymFhgConverge,
    X3cAsymFhgExists,
    X3cAsymFhgConverge,
    X3cSimpleFhgExists,
    SatDhgExists,
    SatDhgConverge,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 11] = [
        ReductionKind::SatAhgExists,
        ReductionKind::SatAhgConverge,
        ReductionKind::SatHdgExists,
        ReductionKind::SatHdgConverge,
        ReductionKind::X3cSymFhgExists,
        ReductionKind::X3cSymFhgConverge,
        ReductionKind::X3cAsymFhgExists,
        ReductionKind::X3cAsymFhgConverge,
        ReductionKind::X3cSimpleFhgExists,
        ReductionKind::SatDhgExists,
        ReductionKind::SatDhgConverge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::SatAhgExists => "sat→ahg-exists",
            ReductionKind::SatAhgConverge => "sat→ahg-converge",
            ReductionKind::SatHdgExists => "sat→hdg-exists",
            ReductionKind::SatHdgConverge => "sat→hdg-converge",
            ReductionKind::X3cSymFhgExists => "x3c→symfhg-exists",
            ReductionKind::X3cSymFhgConverge => "x3c→symfhg-converge",
            ReductionKind::X3cAsymFhgExists => "x3c→asymfhg-exists",
            ReductionKind::X3cAsymFhgConverge => "x3c→asymfhg-converge",
            ReductionKind::X3cSimpleFhgExists => "x3c→simplefhg-exists",
            ReductionKind::SatDhgExists => "sat→dhg-exists",
            ReductionKind::SatDhgConverge => "sat→dhg-converge",
        }
    }

    /// Whether the kind reads a formula (true) or an exact-cover instance.
    pub fn takes_formula(self) -> bool {
        self.name().starts_with("sat")
    }

    /// Constants the kind accepts as overrides.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            ReductionKind::SatAhgExists => &["alpha", "beta_plus", "beta_minus", "gamma"],
            ReductionKind::SatAhgConverge => &["alpha", "beta1_plus", "beta1_minus", "beta2_plus", "beta2_minus"],
            ReductionKind::SatHdgExists => &["alpha", "beta", "gamma"],
            ReductionKind::SatHdgConverge => &["alpha", "beta1_plus", "beta1_minus", "beta2"],
            ReductionKind::X3cSymFhgConverge => &["alpha"],
            _ => &[],
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().replace("->", "→").to_ascii_lowercase();
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| InstanceError::UnknownId(s.to_string()))
    }
}

/// Source instance of a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionInput {
    Sat(SatFormula),
    X3c(X3CInstance),
}

impl From<SatFormula> for ReductionInput {
    fn from(f: SatFormula) -> Self {
        ReductionInput::Sat(f)
    }
}

impl From<X3CInstance> for ReductionInput {
    fn from(x: X3CInstance) -> Self {
        ReductionInput::X3c(x)
    }
}

/// Named integer overrides for a reduction's constants.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionParams {
    values: BTreeMap<String, u64>,
}

impl ReductionParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: u64) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        self.values.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.values.iter().map(|(k, &v)| (k.as_str(), v))
    }

    fn check_names(&self, kind: ReductionKind) -> Result<(), InstanceError> {
        match self.values.keys().find(|k| !kind.params().contains(&k.as_str())) {
            Some(k) => Err(InstanceError::InconsistentRestrictions(format!(
                "{kind} has no parameter {k:?} (accepted: {})",
                kind.params().join(", ")
            ))),
            None => Ok(()),
        }
    }
}

/// Parses `name=value` pairs separated by commas or whitespace.
impl FromStr for ReductionParams {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ReductionParams::new();
        for item in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| InstanceError::InconsistentRestrictions(format!("expected name=value, got {item:?}")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| InstanceError::InconsistentRestrictions(format!("{k}: {v:?} is not an integer")))?;
            p.values.insert(k.trim().to_string(), v);
        }
        Ok(p)
    }
}

pub fn reduce(
    kind: ReductionKind,
    input: &ReductionInput,
    params: &ReductionParams,
) -> Result<NamedInstance, InstanceError> {
    params.check_names(kind)?;
    let wrong = |want: &str| InstanceError::FormulaClassViolation(format!("{kind} needs {want} input"));
    match (kind, input) {
        (ReductionKind::SatAhgExists, ReductionInput::Sat(f)) => ahg::exists(f, params),
        (ReductionKind::SatAhgConverge, ReductionInput::Sat(f)) => ahg::converge(f, params),
        (ReductionKind::SatHdgExists, ReductionInput::Sat(f)) => hdg::exists(f, params),
        (ReductionKind::SatHdgConverge, ReductionInput::Sat(f)) => hdg::converge(f, params),
        (ReductionKind::SatDhgExists, ReductionInput::Sat(f)) => dhg::exists(f),
        (ReductionKind::SatDhgConverge, ReductionInput::Sat(f)) => dhg::converge(f),
        (ReductionKind::X3cSymFhgExists, ReductionInput::X3c(x)) => fhg::sym_exists(x),
        (ReductionKind::X3cSymFhgConverge, ReductionInput::X3c(x)) => fhg::sym_converge(x, params),
        (ReductionKind::X3cAsymFhgExists, ReductionInput::X3c(x)) => fhg::asym_exists(x),
        (ReductionKind::X3cAsymFhgConverge, ReductionInput::X3c(x)) => fhg::asym_converge(x),
        (ReductionKind::X3cSimpleFhgExists, ReductionInput::X3c(x)) => fhg::simple_exists(x),
        (k, _) if k.takes_formula() => Err(wrong("a SAT formula")),
        _ => Err(wrong("an exact-cover")),
    }
}

fn violation(msg: impl Into<String>) -> InstanceError {
    InstanceError::ConstantInequalityViolation(msg.into())
}

/// `params[name]`, or the default `base^exp` (overflow is a violation).
fn constant(params: &ReductionParams, name: &str, base: u64, exp: u32) -> Result<u64, InstanceError> {
    match params.get(name) {
        Some(v) => Ok(v),
        None => base.checked_pow(exp).ok_or_else(|| violation(format!("default {name} = {base}^{exp} overflows"))),
    }
}

/// Rejects agent counts above the representation cap before allocation.
fn check_agents(n: u128) -> Result<usize, InstanceError> {
    if n > MAX_AGENTS as u128 {
        return Err(CoreError::TooManyAgents(usize::try_from(n).unwrap_or(usize::MAX)).into());
    }
    Ok(n as usize)
}

/// Literal agents of a (3,B2) formula: for variable i, the agents of
/// x_i^1, x_i^2, ¬x_i^1, ¬x_i^2 are 4i..4i+4.
struct LiteralAgents {
    /// 1-based clause index of each literal agent.
    clause: Vec<u64>,
}

impl LiteralAgents {
    fn new(f: &SatFormula) -> Result<Self, InstanceError> {
        f.require_3b2()?;
        if f.num_clauses() == 0 {
            return Err(InstanceError::FormulaClassViolation("formula has no clauses".into()));
        }
        let mut clause = Vec::with_capacity(4 * f.num_vars);
        for i in 0..f.num_vars {
            for lit in [super::Lit::pos(i), super::Lit::neg(i)] {
                for (j, _) in f.occurrences(lit) {
                    clause.push(j as u64 + 1);
                }
            }
        }
        Ok(LiteralAgents { clause })
    }

    /// Agent of the `l`-th (0 or 1) occurrence of the positive or negative literal of variable `i`.
    fn id(i: usize, positive: bool, l: usize) -> AgentId {
        4 * i + if positive { 0 } else { 2 } + l
    }

    fn cl(&self, a: AgentId) -> u64 {
        self.clause[a]
    }
}

/// Keeps the first occurrence of each key.
fn dedup_first<K: Hash + Eq + Clone>(keys: Vec<K>) -> Vec<K> {
    let mut seen = HashSet::with_capacity(keys.len());
    keys.into_iter().filter(|k| seen.insert(k.clone())).collect()
}

/// Agents in id order with shared strict profiles. Unlisted keys follow
/// in ascending order below the listed ones.
struct Profiles<K> {
    profiles: Vec<WeakOrder<K>>,
    index: HashMap<Vec<K>, usize>,
    profile_of: Vec<usize>,
}

impl<K: Ord + Hash + Clone> Profiles<K> {
    fn with_capacity(n: usize) -> Self {
        Profiles { profiles: Vec::new(), index: HashMap::new(), profile_of: Vec::with_capacity(n) }
    }

    fn len(&self) -> usize {
        self.profile_of.len()
    }

    /// Appends `count` agents with the given order; returns their ids.
    fn push(&mut self, count: usize, keys: Vec<K>) -> Result<Vec<AgentId>, InstanceError> {
        let keys = dedup_first(keys);
        let idx = match self.index.get(&keys) {
            Some(&i) => i,
            None => {
                self.profiles.push(WeakOrder::strict(keys.clone(), Tail::Ascending)?);
                self.index.insert(keys, self.profiles.len() - 1);
                self.profiles.len() - 1
            }
        };
        let start = self.len();
        self.profile_of.extend(std::iter::repeat_n(idx, count));
        Ok((start..start + count).collect())
    }
}

/// A partition from explicit groups plus singletons for everyone else.
fn with_singletons(n: usize, groups: Vec<Vec<AgentId>>) -> Result<Partition, InstanceError> {
    let mut covered = vec![false; n];
    for g in &groups {
        for &a in g {
            covered[a] = true;
        }
    }
    let mut all = groups;
    all.extend((0..n).filter(|&a| !covered[a]).map(|a| vec![a]));
    Ok(Partition::new(n, all)?)
}

/// Agents of one variable gadget: the two variable agents and the three
/// dummy groups.
struct Gadget {
    z: AgentId,
    zb: AgentId,
    g: [Vec<AgentId>; 3],
}

impl Gadget {
    /// `start` with z moved into G³ and z̄ into G², where the six-move
    /// cycle begins.
    fn start(&self, start: &Partition) -> Result<Partition, InstanceError> {
        let mut groups = start.to_vecs();
        for g in &mut groups {
            g.retain(|&a| a != self.z && a != self.zb);
            if g.contains(&self.g[2][0]) {
                g.push(self.z);
            }
            if g.contains(&self.g[1][0]) {
                g.push(self.zb);
            }
        }
        groups.retain(|g| !g.is_empty());
        Ok(Partition::new(start.n(), groups)?)
    }

    fn cycle(&self) -> Result<Vec<crate::core::DeviationMove>, InstanceError> {
        use crate::core::{Coalition, DeviationMove};
        let plus = |g: &[AgentId], a: AgentId| -> Result<Coalition, CoreError> {
            let mut v = g.to_vec();
            v.push(a);
            Coalition::new(v)
        };
        let [g1, g2, g3] = &self.g;
        let c = |g: &[AgentId]| Coalition::new(g.to_vec());
        Ok(vec![
            DeviationMove::join(self.zb, plus(g3, self.z)?),
            DeviationMove::join(self.z, c(g2)?),
            DeviationMove::join(self.zb, c(g1)?),
            DeviationMove::join(self.z, plus(g1, self.zb)?),
            DeviationMove::join(self.zb, c(g2)?),
            DeviationMove::join(self.z, c(g3)?),
        ])
    }

    /// Adds the gadget start, its cycle script and the cycle claim.
    fn attach(&self, i: usize, inst: NamedInstance) -> Result<NamedInstance, InstanceError> {
        let start = inst.start("initial").expect("initial start is set first");
        let s = self.start(start)?;
        let (sn, cn) = (format!("gadget-{i}"), format!("gadget-{i}-cycle"));
        Ok(inst
            .with_start(&sn, s)
            .with_script(&cn, self.cycle()?)
            .with_claims(vec![super::Claim::CycleScript { script: cn, start: sn }]))
    }
}
