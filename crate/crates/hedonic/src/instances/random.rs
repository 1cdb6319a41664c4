//! Seeded random games for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{AgentId, MAX_AGENTS};
use crate::games::{
    ratio_domain, AnonymousGame, Color, DichotomousGame, DiversityGame, FractionalGame, HedonicGame, Rational, Tail,
    WeakOrder,
};

use super::InstanceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FhgFamily {
    /// Weights in {0, 1}, symmetric.
    SimpleSymmetric,
    /// Weights in {0, 1}, arcs along a random topological order.
    Dag,
    /// Symmetric weights in 0..=5.
    SymmetricNonnegative,
    /// Symmetric weights in −5..=5.
    Symmetric,
    /// Independent weights in −5..=5.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RandomSpec {
    Ahg { strict: bool, natural_sp: bool },
    /// `reds` fixes the red count; otherwise it is drawn from 0..=n.
    Hdg { strict: bool, natural_sp: bool, reds: Option<usize> },
    Fhg(FhgFamily),
    /// `density` in [0, 1] scales how many coalitions are approved.
    Dhg { symmetric: bool, density: f64 },
}

pub fn random(spec: RandomSpec, n: usize, seed: u64) -> Result<HedonicGame, InstanceError> {
    if n == 0 || n > MAX_AGENTS {
        return Err(InstanceError::InconsistentRestrictions(format!("agent count {n} out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match spec {
        RandomSpec::Ahg { strict, natural_sp } => {
            let domain: Vec<usize> = (1..=n).collect();
            let orders = (0..n).map(|_| random_order(&mut rng, &domain, strict, natural_sp)).collect::<Result<_, _>>()?;
            AnonymousGame::from_orders(orders)?.into()
        }
        RandomSpec::Hdg { strict, natural_sp, reds } => {
            let reds = match reds {
                Some(r) if r > n => {
                    return Err(InstanceError::InconsistentRestrictions(format!("{r} reds among {n} agents")))
                }
                Some(r) => r,
                None => rng.random_range(0..=n),
            };
            let mut colors: Vec<Color> = (0..n).map(|i| if i < reds { Color::Red } else { Color::Blue }).collect();
            colors.shuffle(&mut rng);
            let domain = ratio_domain(reds, n);
            let orders = (0..n).map(|_| random_order(&mut rng, &domain, strict, natural_sp)).collect::<Result<_, _>>()?;
            DiversityGame::from_orders(colors, orders)?.into()
        }
        RandomSpec::Fhg(family) => random_fhg(&mut rng, family, n)?.into(),
        RandomSpec::Dhg { symmetric, density } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(InstanceError::InconsistentRestrictions(format!("density {density} outside [0, 1]")));
            }
            random_dhg(&mut rng, n, symmetric, density)?.into()
        }
    })
}

/// Orders the whole domain. Single-peaked orders pick a peak and merge the
/// two sides at random; weak orders then cut the sequence into runs.
fn random_order<K: Clone + Ord + std::hash::Hash>(
    rng: &mut ChaCha8Rng,
    domain: &[K],
    strict: bool,
    natural_sp: bool,
) -> Result<WeakOrder<K>, InstanceError> {
    let seq: Vec<K> = if natural_sp {
        let peak = rng.random_range(0..domain.len());
        let mut left = peak;
        let mut right = peak + 1;
        let mut seq = vec![domain[peak].clone()];
        while left > 0 || right < domain.len() {
            let go_left = right == domain.len() || (left > 0 && rng.random_bool(0.5));
            if go_left {
                left -= 1;
                seq.push(domain[left].clone());
            } else {
                seq.push(domain[right].clone());
                right += 1;
            }
        }
        seq
    } else {
        let mut seq = domain.to_vec();
        seq.shuffle(rng);
        seq
    };
    let classes = if strict {
        seq.into_iter().map(|k| vec![k]).collect()
    } else {
        let mut classes: Vec<Vec<K>> = Vec::new();
        for k in seq {
            match classes.last_mut() {
                Some(last) if rng.random_bool(0.4) => last.push(k),
                _ => classes.push(vec![k]),
            }
        }
        classes
    };
    Ok(WeakOrder::new(classes, Tail::Bottom)?)
}

fn random_fhg(rng: &mut ChaCha8Rng, family: FhgFamily, n: usize) -> Result<FractionalGame, InstanceError> {
    let mut pairs: Vec<(AgentId, AgentId, Rational)> = Vec::new();
    match family {
        FhgFamily::SimpleSymmetric | FhgFamily::SymmetricNonnegative | FhgFamily::Symmetric => {
            let range = match family {
                FhgFamily::SimpleSymmetric => 0..=1,
                FhgFamily::SymmetricNonnegative => 0..=5,
                _ => -5..=5,
            };
            for i in 0..n {
                for j in i + 1..n {
                    let w = rng.random_range(range.clone());
                    if w != 0 {
                        pairs.push((i, j, Rational::integer(w)));
                    }
                }
            }
            Ok(FractionalGame::symmetric(n, Rational::zero(), pairs)?)
        }
        FhgFamily::Dag => {
            let mut order: Vec<AgentId> = (0..n).collect();
            order.shuffle(rng);
            let mut arcs = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(0.5) {
                        arcs.push((order[a], order[b]));
                    }
                }
            }
            Ok(FractionalGame::from_arcs(n, &arcs)?)
        }
        FhgFamily::General => {
            for i in 0..n {
                for j in 0..n {
                    let w = rng.random_range(-5..=5);
                    if i != j && w != 0 {
                        pairs.push((i, j, Rational::integer(w)));
                    }
                }
            }
            Ok(FractionalGame::new(n, Rational::zero(), pairs)?)
        }
    }
}

/// Coalitions of size 1..=min(n, 4) containing `owner`, if given.
fn random_coalition(rng: &mut ChaCha8Rng, n: usize, owner: Option<AgentId>) -> Vec<AgentId> {
    let size = rng.random_range(1..=n.min(4));
    let mut pool: Vec<AgentId> = (0..n).filter(|&a| Some(a) != owner).collect();
    pool.shuffle(rng);
    let mut c: Vec<AgentId> = owner.into_iter().chain(pool).take(size).collect();
    c.sort_unstable();
    c
}

fn random_dhg(rng: &mut ChaCha8Rng, n: usize, symmetric: bool, density: f64) -> Result<DichotomousGame, InstanceError> {
    let per_agent = (density * 2.0 * n as f64).round() as usize;
    let mut approvals: Vec<Vec<Vec<AgentId>>> = vec![Vec::new(); n];
    if symmetric {
        // Each drawn coalition is approved by all of its members.
        for _ in 0..per_agent * n / 2 {
            let c = random_coalition(rng, n, None);
            for &a in &c {
                approvals[a].push(c.clone());
            }
        }
    } else {
        for (a, list) in approvals.iter_mut().enumerate() {
            for _ in 0..per_agent {
                list.push(random_coalition(rng, n, Some(a)));
            }
        }
    }
    Ok(DichotomousGame::new(approvals)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restrictions_hold() {
        for seed in 0..20 {
            let g = random(RandomSpec::Ahg { strict: true, natural_sp: true }, 10, seed).unwrap();
            let a = g.as_anonymous().unwrap();
            assert!(a.is_strict() && a.is_natural_sp());
            let g = random(RandomSpec::Ahg { strict: false, natural_sp: true }, 8, seed).unwrap();
            assert!(g.as_anonymous().unwrap().is_natural_sp());
            let g = random(RandomSpec::Hdg { strict: true, natural_sp: true, reds: Some(3) }, 9, seed).unwrap();
            let d = g.as_diversity().unwrap();
            assert!(d.is_strict() && d.is_natural_sp() && d.red_count() == 3);
            let g = random(RandomSpec::Fhg(FhgFamily::Dag), 8, seed).unwrap();
            assert_eq!(g.as_fractional().unwrap().classify().acyclic, Some(true));
            let g = random(RandomSpec::Fhg(FhgFamily::SimpleSymmetric), 8, seed).unwrap();
            let c = g.as_fractional().unwrap().classify();
            assert!(c.simple && c.symmetric);
            let g = random(RandomSpec::Dhg { symmetric: true, density: 0.5 }, 6, seed).unwrap();
            assert!(g.as_dichotomous().unwrap().is_symmetric().unwrap());
        }
    }

    #[test]
    fn same_seed_same_game() {
        let spec = RandomSpec::Fhg(FhgFamily::General);
        assert_eq!(random(spec, 7, 42).unwrap(), random(spec, 7, 42).unwrap());
    }

    #[test]
    fn inconsistent_requests_fail() {
        let e = random(RandomSpec::Hdg { strict: true, natural_sp: false, reds: Some(9) }, 4, 0);
        assert!(matches!(e, Err(InstanceError::InconsistentRestrictions(_))));
        let e = random(RandomSpec::Dhg { symmetric: false, density: 1.5 }, 4, 0);
        assert!(matches!(e, Err(InstanceError::InconsistentRestrictions(_))));
    }
}
