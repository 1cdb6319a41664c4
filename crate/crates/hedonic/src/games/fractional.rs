use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::core::{AgentId, Preferences, MAX_AGENTS};

use super::rational::Rational;
use super::GameError;

/// Scaled weights fit in i128 with room for n-fold sums and cross products.
const SCALED_LIMIT: i128 = 1 << 60;
const SCALED_MAX_N: usize = 1 << 20;

/// Fractional hedonic game: agent i values C at Σ_{j∈C} w(i,j) / |C|.
///
/// Weights are stored sparsely against a default for unlisted pairs.
#[derive(Debug, Clone)]
pub struct FractionalGame {
    n: usize,
    default: BigRational,
    /// Explicit off-diagonal weights per agent, sorted by partner.
    rows: Vec<Vec<(AgentId, BigRational)>>,
    scaled: Option<Scaled>,
}

/// All weights multiplied by the lcm of their denominators.
#[derive(Debug, Clone)]
struct Scaled {
    default: i128,
    /// Explicit weight minus default, scaled.
    rows: Vec<Vec<(AgentId, i128)>>,
}

impl PartialEq for FractionalGame {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.default == other.default && self.rows == other.rows
    }
}

impl Eq for FractionalGame {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FhgClass {
    pub symmetric: bool,
    pub simple: bool,
    pub simple_asymmetric: bool,
    pub nonnegative: bool,
    /// Only defined for simple asymmetric games.
    pub acyclic: Option<bool>,
}

impl FractionalGame {
    /// `entries` are directed (i, j, w(i,j)); repeated pairs are rejected and
    /// w(i,i) must be zero if given.
    pub fn new(n: usize, default: Rational, entries: Vec<(AgentId, AgentId, Rational)>) -> Result<Self, GameError> {
        if n > MAX_AGENTS {
            return Err(GameError::AgentCount { expected: MAX_AGENTS, got: n });
        }
        let mut map: HashMap<(AgentId, AgentId), BigRational> = HashMap::new();
        for (i, j, w) in entries {
            if i >= n || j >= n {
                return Err(GameError::DomainViolation(format!("pair ({i},{j}) out of range")));
            }
            if i == j {
                if !w.is_zero() {
                    return Err(GameError::DomainViolation(format!("w({i},{i}) must be 0")));
                }
                continue;
            }
            if map.insert((i, j), w.0).is_some() {
                return Err(GameError::DomainViolation(format!("pair ({i},{j}) given twice")));
            }
        }
        let mut rows: Vec<Vec<(AgentId, BigRational)>> = vec![Vec::new(); n];
        for ((i, j), w) in map {
            rows[i].push((j, w));
        }
        for r in &mut rows {
            r.sort_by_key(|e| e.0);
        }
        let default = default.0;
        let scaled = scale(&default, &rows, n);
        Ok(FractionalGame { n, default, rows, scaled })
    }

    /// Each unordered pair {i, j} gets weight w in both directions.
    pub fn symmetric(n: usize, default: Rational, pairs: Vec<(AgentId, AgentId, Rational)>) -> Result<Self, GameError> {
        let entries = pairs
            .into_iter()
            .flat_map(|(i, j, w)| [(i, j, w.clone()), (j, i, w)])
            .collect();
        Self::new(n, default, entries)
    }

    /// Simple game from directed arcs (weight 1), everything else 0.
    pub fn from_arcs(n: usize, arcs: &[(AgentId, AgentId)]) -> Result<Self, GameError> {
        let entries = arcs.iter().map(|&(i, j)| (i, j, Rational::one())).collect();
        Self::new(n, Rational::zero(), entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn default_weight(&self) -> Rational {
        Rational(self.default.clone())
    }

    /// Explicit (partner, weight) entries of agent `i`.
    pub fn explicit_row(&self, i: AgentId) -> impl Iterator<Item = (AgentId, Rational)> + '_ {
        self.rows[i].iter().map(|(j, w)| (*j, Rational(w.clone())))
    }

    pub fn weight(&self, i: AgentId, j: AgentId) -> Rational {
        if i == j {
            return Rational::zero();
        }
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => Rational(self.rows[i][k].1.clone()),
            Err(_) => Rational(self.default.clone()),
        }
    }

    fn has_implicit_pairs(&self) -> bool {
        let explicit: usize = self.rows.iter().map(Vec::len).sum();
        explicit < self.n * self.n.saturating_sub(1)
    }

    /// Σ_{j∈C} w(i,j), exact.
    pub fn total(&self, agent: AgentId, coalition: &[AgentId]) -> BigRational {
        let row = &self.rows[agent];
        let mut sum = &self.default * BigInt::from(coalition.len() as i64 - 1);
        for_each_hit(row, coalition, |w| sum += w - &self.default);
        sum
    }

    fn total_scaled(s: &Scaled, agent: AgentId, coalition: &[AgentId]) -> i128 {
        let mut sum = s.default * (coalition.len() as i128 - 1);
        for_each_hit(&s.rows[agent], coalition, |d| sum += *d);
        sum
    }

    /// Exact utility of `agent` in `coalition` (which must contain it).
    pub fn utility(&self, agent: AgentId, coalition: &[AgentId]) -> Rational {
        Rational(self.total(agent, coalition) / BigInt::from(coalition.len()))
    }

    /// Sign of the utility, without building the fraction.
    pub fn utility_sign(&self, agent: AgentId, coalition: &[AgentId]) -> Ordering {
        match &self.scaled {
            Some(s) => Self::total_scaled(s, agent, coalition).cmp(&0),
            None => self.total(agent, coalition).cmp(&BigRational::zero()),
        }
    }

    pub fn classify(&self) -> FhgClass {
        let zero = BigRational::zero();
        let one = BigRational::one();
        let implicit = self.has_implicit_pairs();
        let entries = || self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, w)| (i, *j, w)));
        let symmetric = entries().all(|(i, j, w)| self.weight(j, i).0 == *w);
        let simple = (!implicit || self.default == zero || self.default == one)
            && entries().all(|(_, _, w)| *w == zero || *w == one);
        let nonnegative = (!implicit || !self.default.is_negative()) && entries().all(|(_, _, w)| !w.is_negative());
        let simple_asymmetric = simple && self.arcs().iter().all(|&(i, j)| self.weight(j, i).0 != one);
        let acyclic = simple_asymmetric.then(|| topological_order(self.n, &self.arcs()).is_some());
        FhgClass { symmetric, simple, simple_asymmetric, nonnegative, acyclic }
    }

    /// Directed pairs with weight 1 (the digraph of a simple game).
    pub fn arcs(&self) -> Vec<(AgentId, AgentId)> {
        let one = BigRational::one();
        if self.default == one && self.has_implicit_pairs() {
            let mut out = Vec::new();
            for i in 0..self.n {
                for j in 0..self.n {
                    if i != j && self.weight(i, j).0 == one {
                        out.push((i, j));
                    }
                }
            }
            return out;
        }
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().filter(|(_, w)| *w == one).map(move |(j, _)| (i, *j)))
            .collect()
    }
}

/// Calls `f` on the entries of `row` whose partner lies in `coalition`.
fn for_each_hit<T>(row: &[(AgentId, T)], coalition: &[AgentId], mut f: impl FnMut(&T)) {
    if row.len() <= coalition.len() {
        for (j, w) in row {
            if coalition.binary_search(j).is_ok() {
                f(w);
            }
        }
    } else {
        for j in coalition {
            if let Ok(k) = row.binary_search_by_key(j, |e| e.0) {
                f(&row[k].1);
            }
        }
    }
}

fn scale(default: &BigRational, rows: &[Vec<(AgentId, BigRational)>], n: usize) -> Option<Scaled> {
    if n > SCALED_MAX_N {
        return None;
    }
    let mut l = default.denom().clone();
    for (_, w) in rows.iter().flatten() {
        l = l.lcm(w.denom());
    }
    let lr = BigRational::from_integer(l);
    let conv = |w: &BigRational| -> Option<i128> {
        let v = (w * &lr).to_integer().to_i128()?;
        (v.abs() <= SCALED_LIMIT).then_some(v)
    };
    let d = conv(default)?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = Vec::with_capacity(r.len());
        for (j, w) in r {
            row.push((*j, conv(w)? - d));
        }
        out.push(row);
    }
    Some(Scaled { default: d, rows: out })
}

/// Smallest-index-first topological order, or `None` on a directed cycle.
pub fn topological_order(n: usize, arcs: &[(AgentId, AgentId)]) -> Option<Vec<AgentId>> {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<AgentId>> = vec![Vec::new(); n];
    for &(i, j) in arcs {
        out[i].push(j);
        indeg[j] += 1;
    }
    let mut ready: std::collections::BTreeSet<AgentId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

impl Preferences for FractionalGame {
    fn n(&self) -> usize {
        self.n
    }

    fn compare_members(&self, agent: AgentId, a: &[AgentId], b: &[AgentId]) -> Ordering {
        match &self.scaled {
            Some(s) => {
                let sa = Self::total_scaled(s, agent, a);
                let sb = Self::total_scaled(s, agent, b);
                (sa * b.len() as i128).cmp(&(sb * a.len() as i128))
            }
            None => {
                let sa = self.total(agent, a) * BigInt::from(b.len());
                let sb = self.total(agent, b) * BigInt::from(a.len());
                sa.cmp(&sb)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::integer(v)
    }

    #[test]
    fn utility_is_exact_average() {
        let g = FractionalGame::symmetric(3, r(0), vec![(0, 1, r(3)), (0, 2, r(4))]).unwrap();
        assert_eq!(g.utility(0, &[0, 1, 2]), Rational::new(7, 3).unwrap());
        assert_eq!(g.utility(0, &[0]), Rational::zero());
        assert_eq!(g.compare_members(0, &[0, 2], &[0, 1, 2]), Ordering::Less);
    }

    #[test]
    fn big_weights_fall_back_to_bigint() {
        let huge = Rational(BigRational::from_integer(BigInt::from(1u8) << 100));
        let g = FractionalGame::symmetric(3, r(0), vec![(0, 1, huge), (0, 2, r(1))]).unwrap();
        assert!(g.scaled.is_none());
        assert_eq!(g.compare_members(0, &[0, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(g.utility_sign(0, &[0, 2]), Ordering::Greater);
    }

    #[test]
    fn fractional_weights_scale() {
        let half = Rational::new(1, 2).unwrap();
        let third = Rational::new(1, 3).unwrap();
        let g = FractionalGame::new(3, r(0), vec![(0, 1, half), (0, 2, third)]).unwrap();
        assert!(g.scaled.is_some());
        assert_eq!(g.compare_members(0, &[0, 1], &[0, 2]), Ordering::Greater);
    }

    #[test]
    fn classification() {
        let tri = FractionalGame::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = tri.classify();
        assert!(c.simple_asymmetric && !c.symmetric);
        assert_eq!(c.acyclic, Some(false));
        let k3 = FractionalGame::new(3, r(1), vec![]).unwrap();
        let c = k3.classify();
        assert!(c.simple && c.symmetric && !c.simple_asymmetric && c.acyclic.is_none());
        let neg = FractionalGame::symmetric(3, r(-1), vec![]).unwrap();
        assert!(!neg.classify().nonnegative);
    }

    #[test]
    fn topo_order_smallest_first() {
        assert_eq!(topological_order(3, &[(2, 0), (1, 0)]), Some(vec![1, 2, 0]));
        assert_eq!(topological_order(2, &[(0, 1), (1, 0)]), None);
    }
}
