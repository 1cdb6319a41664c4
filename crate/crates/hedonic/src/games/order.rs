use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use super::GameError;

/// How keys that no class mentions are ranked. They always sit below every
/// listed key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    /// One shared bottom indifference class.
    Bottom,
    /// Strict, smaller keys preferred.
    Ascending,
    /// Strict, larger keys preferred.
    Descending,
}

/// A weak order over keys, most preferred class first.
///
/// Keys outside every class are ranked by `tail`, which lets huge key
/// domains (reduction gadgets) stay implicit.
#[derive(Debug, Clone)]
pub struct WeakOrder<K> {
    classes: Vec<Vec<K>>,
    rank: HashMap<K, usize>,
    listed: HashSet<K>,
    tail: Tail,
}

impl<K: Ord + Hash + Clone> PartialEq for WeakOrder<K> {
    fn eq(&self, other: &Self) -> bool {
        self.tail == other.tail && self.classes == other.classes
    }
}

impl<K: Ord + Hash + Clone> Eq for WeakOrder<K> {}

impl<K: Ord + Hash + Clone> WeakOrder<K> {
    /// Every key in `classes` counts as explicitly listed.
    pub fn new(classes: Vec<Vec<K>>, tail: Tail) -> Result<Self, GameError> {
        let listed = classes.iter().flatten().cloned().collect();
        Self::with_listed(classes, tail, listed)
    }

    /// Strict order in the given sequence.
    pub fn strict(keys: Vec<K>, tail: Tail) -> Result<Self, GameError> {
        Self::new(keys.into_iter().map(|k| vec![k]).collect(), tail)
    }

    fn with_listed(mut classes: Vec<Vec<K>>, tail: Tail, listed: HashSet<K>) -> Result<Self, GameError> {
        let mut rank = HashMap::new();
        for (r, class) in classes.iter_mut().enumerate() {
            if class.is_empty() {
                return Err(GameError::MalformedOrder("empty indifference class".into()));
            }
            class.sort();
            for k in class.iter() {
                if rank.insert(k.clone(), r).is_some() {
                    return Err(GameError::MalformedOrder("key listed twice".into()));
                }
            }
        }
        Ok(WeakOrder { classes, rank, listed, tail })
    }

    pub fn classes(&self) -> &[Vec<K>] {
        &self.classes
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Whether the key came from the source listing rather than a completion.
    pub fn is_listed(&self, k: &K) -> bool {
        self.listed.contains(k)
    }

    pub fn class_of(&self, k: &K) -> Option<usize> {
        self.rank.get(k).copied()
    }

    /// `Greater` when `a` is preferred to `b`.
    pub fn cmp_keys(&self, a: &K, b: &K) -> Ordering {
        match (self.rank.get(a), self.rank.get(b)) {
            (Some(x), Some(y)) => y.cmp(x),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => match self.tail {
                Tail::Bottom => Ordering::Equal,
                Tail::Ascending => b.cmp(a),
                Tail::Descending => a.cmp(b),
            },
        }
    }

    /// Rank of `k` within `domain` (0 = best; equal keys share a rank, and
    /// ranks are dense).
    pub fn dense_ranks(&self, domain: &[K]) -> HashMap<K, usize> {
        let mut sorted: Vec<&K> = domain.iter().collect();
        sorted.sort_by(|a, b| self.cmp_keys(b, a).then_with(|| a.cmp(b)));
        let mut out = HashMap::with_capacity(sorted.len());
        let mut r = 0;
        for (i, k) in sorted.iter().enumerate() {
            if i > 0 && self.cmp_keys(sorted[i - 1], k) != Ordering::Equal {
                r += 1;
            }
            out.insert((*k).clone(), r);
        }
        out
    }

    /// Strict iff no two distinct keys of `domain` are indifferent.
    pub fn is_strict_on(&self, domain: &[K]) -> bool {
        let ranks = self.dense_ranks(domain);
        let distinct: HashSet<usize> = ranks.values().copied().collect();
        distinct.len() == ranks.len()
    }

    /// Completes `listed` over `axis` so that the result is single-peaked.
    ///
    /// Unlisted keys go below every listed key where the axis allows it;
    /// keys that lie between listed keys are inserted just before the
    /// listed key that needs them. The remaining keys follow the peak
    /// outwards, right side first, each in its own class.
    pub fn complete_single_peaked(listed: Vec<Vec<K>>, axis: &[K]) -> Result<Self, GameError> {
        let pos = axis_positions(axis)?;
        let in_class = class_index(&listed, &pos)?;
        let Some(first) = listed.first() else {
            return Err(GameError::MalformedOrder("nothing listed".into()));
        };
        let lo = first.iter().map(|k| pos[k]).min().unwrap();
        let hi = first.iter().map(|k| pos[k]).max().unwrap();
        if (lo..=hi).any(|p| in_class.get(&axis[p]) != Some(&0)) {
            return Err(GameError::NotSinglePeaked("top class is not an axis interval".into()));
        }
        // next unemitted positions on each side
        let mut left = lo as isize - 1;
        let mut right = hi + 1;
        let mut out: Vec<Vec<K>> = vec![first.clone()];
        for (c, class) in listed.iter().enumerate().skip(1) {
            let mut far_right = None;
            let mut far_left = None;
            for k in class {
                let p = pos[k];
                if p >= right {
                    far_right = far_right.max(Some(p));
                } else if (p as isize) <= left {
                    far_left = Some(far_left.map_or(p, |f: usize| f.min(p)));
                } else {
                    return Err(GameError::NotSinglePeaked("listed key already passed".into()));
                }
            }
            let mut blockers = Vec::new();
            let mut seen_member = false;
            if let Some(fr) = far_right {
                for key in &axis[right..fr] {
                    match in_class.get(key) {
                        None if seen_member => {
                            return Err(GameError::NotSinglePeaked("class split by unlisted key".into()))
                        }
                        None => blockers.push(key.clone()),
                        Some(&cc) if cc == c => seen_member = true,
                        Some(_) => {
                            return Err(GameError::NotSinglePeaked("listing contradicts the axis".into()))
                        }
                    }
                }
                right = fr + 1;
            }
            seen_member = false;
            if let Some(fl) = far_left {
                let mut p = left;
                while p > fl as isize {
                    match in_class.get(&axis[p as usize]) {
                        None if seen_member => {
                            return Err(GameError::NotSinglePeaked("class split by unlisted key".into()))
                        }
                        None => blockers.push(axis[p as usize].clone()),
                        Some(&cc) if cc == c => seen_member = true,
                        Some(_) => {
                            return Err(GameError::NotSinglePeaked("listing contradicts the axis".into()))
                        }
                    }
                    p -= 1;
                }
                left = fl as isize - 1;
            }
            out.extend(blockers.into_iter().map(|k| vec![k]));
            out.push(class.clone());
        }
        out.extend(axis[right..].iter().map(|k| vec![k.clone()]));
        let mut p = left;
        while p >= 0 {
            out.push(vec![axis[p as usize].clone()]);
            p -= 1;
        }
        let listed_keys = listed.into_iter().flatten().collect();
        Self::with_listed(out, Tail::Bottom, listed_keys)
    }

    /// Completes `listed` over `axis` by widening listed classes.
    ///
    /// Each unlisted key joins the class of the nearest listed key farther
    /// from the peak on its side; beyond the outermost listed key it joins
    /// that key's class. A side with no listed key becomes one bottom class.
    pub fn complete_plateau(listed: Vec<Vec<K>>, axis: &[K]) -> Result<Self, GameError> {
        let pos = axis_positions(axis)?;
        let in_class = class_index(&listed, &pos)?;
        let Some(first) = listed.first() else {
            return Err(GameError::MalformedOrder("nothing listed".into()));
        };
        let lo = first.iter().map(|k| pos[k]).min().unwrap();
        let hi = first.iter().map(|k| pos[k]).max().unwrap();
        let mut classes = listed.clone();
        let mut bottom = Vec::new();
        let mut join = |k: &K, class: Option<usize>| match class {
            Some(c) => classes[c].push(k.clone()),
            None => bottom.push(k.clone()),
        };
        // nearest listed key at or beyond each position, per side
        let mut next_farther: Vec<Option<usize>> = vec![None; axis.len()];
        let mut last: Option<usize> = None;
        for p in (hi + 1..axis.len()).rev() {
            if let Some(&c) = in_class.get(&axis[p]) {
                last = Some(c);
            }
            next_farther[p] = last;
        }
        let outermost_right = (hi + 1..axis.len()).rev().find_map(|p| in_class.get(&axis[p]).copied());
        for p in hi + 1..axis.len() {
            if !in_class.contains_key(&axis[p]) {
                join(&axis[p], next_farther[p].or(outermost_right));
            }
        }
        let mut last: Option<usize> = None;
        for p in 0..lo {
            if let Some(&c) = in_class.get(&axis[p]) {
                last = Some(c);
            }
            next_farther[p] = last;
        }
        let outermost_left = (0..lo).find_map(|p| in_class.get(&axis[p]).copied());
        for p in 0..lo {
            if !in_class.contains_key(&axis[p]) {
                join(&axis[p], next_farther[p].or(outermost_left));
            }
        }
        for key in &axis[lo..=hi] {
            if !in_class.contains_key(key) {
                join(key, Some(0));
            }
        }
        if !bottom.is_empty() {
            classes.push(bottom);
        }
        let listed_keys = listed.into_iter().flatten().collect();
        Self::with_listed(classes, Tail::Bottom, listed_keys)
    }
}

fn axis_positions<K: Hash + Eq + Clone>(axis: &[K]) -> Result<HashMap<K, usize>, GameError> {
    let mut pos = HashMap::with_capacity(axis.len());
    for (i, k) in axis.iter().enumerate() {
        if pos.insert(k.clone(), i).is_some() {
            return Err(GameError::AxisDomainMismatch("axis repeats a key".into()));
        }
    }
    Ok(pos)
}

fn class_index<K: Hash + Eq + Clone>(
    listed: &[Vec<K>],
    pos: &HashMap<K, usize>,
) -> Result<HashMap<K, usize>, GameError> {
    let mut idx = HashMap::new();
    for (c, class) in listed.iter().enumerate() {
        for k in class {
            if !pos.contains_key(k) {
                return Err(GameError::AxisDomainMismatch("listed key off the axis".into()));
            }
            if idx.insert(k.clone(), c).is_some() {
                return Err(GameError::MalformedOrder("key listed twice".into()));
            }
        }
    }
    Ok(idx)
}

/// The axis a single-peakedness check runs against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisSpec<K> {
    /// Ascending key order.
    Natural,
    /// Keys listed left to right.
    Explicit(Vec<K>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpCheck<K> {
    pub ok: bool,
    /// Natural axis only: the largest most-preferred key.
    pub peak: Option<K>,
}

/// Single-peakedness of `order` restricted to `domain`: no key may have a
/// strictly better key on both of its sides along the axis.
pub fn single_peaked_check<K: Ord + Hash + Clone>(
    order: &WeakOrder<K>,
    axis: &AxisSpec<K>,
    domain: &[K],
) -> Result<SpCheck<K>, GameError> {
    let line: Vec<K> = match axis {
        AxisSpec::Natural => {
            let mut d = domain.to_vec();
            d.sort();
            d.dedup();
            d
        }
        AxisSpec::Explicit(a) => {
            let d: HashSet<&K> = domain.iter().collect();
            let ax: HashSet<&K> = a.iter().collect();
            if d != ax || ax.len() != a.len() {
                return Err(GameError::AxisDomainMismatch(format!(
                    "axis has {} keys, domain {}",
                    a.len(),
                    d.len()
                )));
            }
            a.clone()
        }
    };
    let ranks = order.dense_ranks(&line);
    let r: Vec<usize> = line.iter().map(|k| ranks[k]).collect();
    let len = r.len();
    let mut best_left = vec![usize::MAX; len];
    for i in 1..len {
        best_left[i] = best_left[i - 1].min(r[i - 1]);
    }
    let mut ok = true;
    let mut best_right = usize::MAX;
    for i in (0..len).rev() {
        if best_left[i] < r[i] && best_right < r[i] {
            ok = false;
            break;
        }
        best_right = best_right.min(r[i]);
    }
    let peak = match axis {
        AxisSpec::Natural => line.iter().rev().find(|k| ranks[*k] == 0).cloned(),
        AxisSpec::Explicit(_) => None,
    };
    Ok(SpCheck { ok, peak })
}
