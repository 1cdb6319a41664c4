//! Incremental construction of diversity games whose orders depend on the
//! final ratio domain, plus a shadow partition for writing scripts.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::core::{AgentId, Coalition, DeviationMove};
use crate::games::{ratio_domain, Color, DiversityGame, GameError, RatioKey, Tail, WeakOrder};

/// Order over red fractions, materialized once the domain is known.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderSpec {
    /// Strict listing, completed single-peaked on the natural axis.
    SinglePeaked(Vec<RatioKey>),
    /// Weak listing, completed by widening classes on the natural axis.
    Plateau(Vec<Vec<RatioKey>>),
    /// Smaller positive fractions first, 0 last.
    LowExtreme,
    /// Larger fractions below 1 first, 1 last.
    HighExtreme,
}

impl OrderSpec {
    fn materialize(&self, domain: &[RatioKey]) -> Result<WeakOrder<RatioKey>, GameError> {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        match self {
            OrderSpec::SinglePeaked(keys) => {
                WeakOrder::complete_single_peaked(keys.iter().map(|&k| vec![k]).collect(), domain)
            }
            OrderSpec::Plateau(classes) => WeakOrder::complete_plateau(classes.clone(), domain),
            OrderSpec::LowExtreme => {
                let mut keys: Vec<RatioKey> = domain.iter().copied().filter(|k| *k != zero).collect();
                keys.push(zero);
                WeakOrder::strict(keys, Tail::Bottom)
            }
            OrderSpec::HighExtreme => {
                let mut keys: Vec<RatioKey> = domain.iter().rev().copied().filter(|k| *k != one).collect();
                keys.push(one);
                WeakOrder::strict(keys, Tail::Bottom)
            }
        }
    }
}

pub(crate) fn r(p: u64, q: u64) -> RatioKey {
    Ratio::new(p, q)
}

#[derive(Debug, Default, Clone)]
pub struct HdgBuilder {
    colors: Vec<Color>,
    specs: Vec<OrderSpec>,
}

impl HdgBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, color: Color, spec: OrderSpec) -> AgentId {
        self.colors.push(color);
        self.specs.push(spec);
        self.colors.len() - 1
    }

    pub fn add_many(&mut self, count: usize, color: Color, spec: &OrderSpec) -> Vec<AgentId> {
        (0..count).map(|_| self.add(color, spec.clone())).collect()
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn build(&self) -> Result<DiversityGame, GameError> {
        let reds = self.colors.iter().filter(|&&c| c == Color::Red).count();
        let domain = ratio_domain(reds, self.colors.len());
        let mut cache: HashMap<&OrderSpec, WeakOrder<RatioKey>> = HashMap::new();
        let mut orders = Vec::with_capacity(self.specs.len());
        for s in &self.specs {
            let w = match cache.get(s) {
                Some(w) => w.clone(),
                None => {
                    let w = s.materialize(&domain)?;
                    cache.insert(s, w.clone());
                    w
                }
            };
            orders.push(w);
        }
        DiversityGame::from_orders(self.colors.clone(), orders)
    }
}

/// Tracks coalitions while a script is written, so that each join names
/// the target coalition as it is at that moment. Agents never mentioned
/// are singletons.
#[derive(Debug, Default, Clone)]
pub struct ScriptWriter {
    group_of: HashMap<AgentId, usize>,
    groups: Vec<Vec<AgentId>>,
    moves: Vec<DeviationMove>,
}

impl ScriptWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts from the given coalitions instead of singletons.
    pub fn with_groups(groups: &[Vec<AgentId>]) -> Self {
        let mut w = Self::default();
        for g in groups {
            for &a in g {
                w.group_of.insert(a, w.groups.len());
            }
            w.groups.push(g.clone());
        }
        w
    }

    fn members(&self, a: AgentId) -> Vec<AgentId> {
        match self.group_of.get(&a) {
            Some(&g) => self.groups[g].clone(),
            None => vec![a],
        }
    }

    fn detach(&mut self, a: AgentId) {
        if let Some(g) = self.group_of.remove(&a) {
            self.groups[g].retain(|&x| x != a);
        }
    }

    /// `a` joins the coalition currently containing `host`.
    pub fn join(&mut self, a: AgentId, host: AgentId) {
        let target = self.members(host);
        let coalition = Coalition::new(target).expect("shadow coalitions are well formed");
        self.detach(a);
        let g = match self.group_of.get(&host) {
            Some(&g) => g,
            None => {
                self.groups.push(vec![host]);
                let g = self.groups.len() - 1;
                self.group_of.insert(host, g);
                g
            }
        };
        self.groups[g].push(a);
        self.group_of.insert(a, g);
        self.moves.push(DeviationMove::join(a, coalition));
    }

    /// `a` leaves to be alone.
    pub fn alone(&mut self, a: AgentId) {
        self.detach(a);
        self.moves.push(DeviationMove::alone(a));
    }

    pub fn coalition_of(&self, a: AgentId) -> Vec<AgentId> {
        let mut m = self.members(a);
        m.sort_unstable();
        m
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn into_moves(self) -> Vec<DeviationMove> {
        self.moves
    }
}

/// Adds the auxiliary agents of the homogeneous-coalition construction and
/// writes the moves that gather `targets` (all of `color`) into one
/// coalition from singletons. Targets must prefer 1/3 ≻ 0 ≻ 1/2 when blue,
/// 2/3 ≻ 1 ≻ 1/2 when red.
pub fn homogeneous_coalition(b: &mut HdgBuilder, w: &mut ScriptWriter, targets: &[AgentId], color: Color) {
    let k = targets.len();
    if k < 2 {
        return;
    }
    // `x` agents share the targets' color, `o` agents have the other one.
    let (other, spec) = match color {
        Color::Blue => (Color::Red, OrderSpec::LowExtreme),
        Color::Red => (Color::Blue, OrderSpec::HighExtreme),
    };
    let o = b.add_many(2, other, &spec);
    let x = b.add_many(k + 2, color, &spec);
    // trash coalition {o_2, x_k, x_{k+1}}
    w.join(x[k - 1], o[1]);
    w.join(x[k], o[1]);
    for i in 0..k - 1 {
        w.join(x[i], o[0]);
        w.join(targets[i], o[0]);
        w.join(x[i], o[1]);
        w.join(targets[i], targets[k - 1]);
    }
}
