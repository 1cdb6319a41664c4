//! Library answers against independent computations.

use hedonic::core::{is_stable, Partition, StabilityKind};
use hedonic::games::HedonicGame;
use hedonic::instances::{random, FhgFamily, Lit, RandomSpec, SatFormula, X3CInstance};
use hedonic::search::{
    all_paths_converge, bell_number, enumerate_partitions, exists_is_partition, exists_path_to_is, SearchBudget,
    Strategy,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bell numbers as row sums of Stirling numbers of the second kind.
fn stirling_bell(n: usize) -> BigUint {
    let mut s = vec![vec![BigUint::from(0u32); n + 1]; n + 1];
    s[0][0] = 1u32.into();
    for i in 1..=n {
        for k in 1..=i {
            s[i][k] = BigUint::from(k) * &s[i - 1][k] + &s[i - 1][k - 1];
        }
    }
    s[n].iter().sum()
}

#[test]
fn bell_numbers() {
    for n in 0..=25 {
        assert_eq!(bell_number(n), stirling_bell(n), "n = {n}");
    }
    for n in 1..=9 {
        let all: Vec<Partition> = enumerate_partitions(n).unwrap().collect();
        assert_eq!(BigUint::from(all.len()), bell_number(n));
        let mut keys: Vec<_> = all.iter().map(|p| p.canonical()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), all.len(), "duplicates at n = {n}");
    }
}

fn random_cnf(rng: &mut ChaCha8Rng) -> SatFormula {
    let vars = rng.random_range(1..=5);
    let clauses = (0..rng.random_range(1..=7))
        .map(|_| {
            (0..rng.random_range(1..=3))
                .map(|_| Lit { var: rng.random_range(0..vars), positive: rng.random_bool(0.5) })
                .collect()
        })
        .collect();
    SatFormula::new(vars, clauses).unwrap()
}

/// Recursive splitting on the first variable.
fn dpll(clauses: &[Vec<Lit>], vars: usize, next: usize) -> bool {
    if clauses.is_empty() {
        return true;
    }
    if clauses.iter().any(|c| c.is_empty()) || next == vars {
        return false;
    }
    [true, false].iter().any(|&val| {
        let reduced: Vec<Vec<Lit>> = clauses
            .iter()
            .filter(|c| !c.iter().any(|l| l.var == next && l.positive == val))
            .map(|c| c.iter().copied().filter(|l| l.var != next).collect())
            .collect();
        dpll(&reduced, vars, next + 1)
    })
}

#[test]
fn sat_oracle_matches_splitting() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let f = random_cnf(&mut rng);
        let found = f.brute_force_sat();
        assert_eq!(found.is_some(), dpll(&f.clauses, f.num_vars, 0), "{:?}", f.clauses);
        if let Some(a) = found {
            assert!(f.satisfied_by(&a));
        }
    }
}

/// Exact cover by trying every subset of sets.
fn cover_by_subsets(x: &X3CInstance) -> bool {
    (0u32..1 << x.sets.len()).any(|mask| {
        let mut seen = vec![0; x.ground_size];
        for (k, s) in x.sets.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for &e in s {
                    seen[e] += 1;
                }
            }
        }
        seen.iter().all(|&c| c == 1)
    })
}

#[test]
fn x3c_oracle_matches_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let ground = 3 * rng.random_range(1..=3);
        let sets: Vec<[usize; 3]> = (0..rng.random_range(1..=8))
            .filter_map(|_| {
                let mut s = [0; 3];
                for e in &mut s {
                    *e = rng.random_range(0..ground);
                }
                (s[0] != s[1] && s[1] != s[2] && s[0] != s[2]).then_some(s)
            })
            .collect();
        let x = X3CInstance::new(ground, sets).unwrap();
        let found = x.brute_force_cover();
        assert_eq!(found.is_some(), cover_by_subsets(&x), "{x:?}");
        if let Some(chosen) = found {
            let mut elems: Vec<usize> = chosen.iter().flat_map(|&k| x.sets[k]).collect();
            elems.sort_unstable();
            assert_eq!(elems, (0..ground).collect::<Vec<_>>());
        }
    }
}

fn agree(g: &HedonicGame, s: Strategy) {
    let b = SearchBudget::default().with_parallelism(1);
    let plain = exists_is_partition(g, Strategy::Plain, &b).unwrap();
    let other = exists_is_partition(g, s, &b).unwrap();
    assert_eq!(plain.witness().is_some(), other.witness().is_some(), "{plain:?} vs {other:?}");
    // the plain witness must be the smallest IS partition in enumeration
    let first = enumerate_partitions(g.n())
        .unwrap()
        .filter(|p| is_stable(g, p, StabilityKind::IS))
        .min_by_key(|p| p.canonical());
    assert_eq!(plain.witness(), first.as_ref());
}

#[test]
fn type_reduction_on_diversity_games() {
    for seed in 0..60 {
        let n = 1 + seed as usize % 8;
        let spec = RandomSpec::Hdg { strict: seed % 2 == 0, natural_sp: seed % 3 == 0, reds: None };
        agree(&random(spec, n, seed).unwrap(), Strategy::TypeReduced);
    }
}

#[test]
fn type_reduction_on_anonymous_games() {
    for seed in 0..60 {
        let n = 1 + seed as usize % 8;
        let spec = RandomSpec::Ahg { strict: seed % 2 == 1, natural_sp: seed % 4 == 0 };
        agree(&random(spec, n, seed).unwrap(), Strategy::TypeReduced);
    }
}

#[test]
fn pruning_on_general_fractional_games() {
    for seed in 0..60 {
        let n = 1 + seed as usize % 7;
        agree(&random(RandomSpec::Fhg(FhgFamily::General), n, seed).unwrap(), Strategy::PrunedFHG);
    }
}

#[test]
fn answers_do_not_depend_on_worker_count() {
    for seed in 0..30 {
        let n = 3 + seed as usize % 5;
        let g = random(RandomSpec::Dhg { symmetric: false, density: 0.4 }, n, seed).unwrap();
        let one = SearchBudget::default().with_parallelism(1);
        let four = SearchBudget::default().with_parallelism(4);
        let s = Partition::singletons(n);
        assert_eq!(exists_path_to_is(&g, &s, &one).unwrap(), exists_path_to_is(&g, &s, &four).unwrap());
        assert_eq!(all_paths_converge(&g, &s, &one).unwrap(), all_paths_converge(&g, &s, &four).unwrap());
        assert_eq!(
            exists_is_partition(&g, Strategy::Plain, &one).unwrap(),
            exists_is_partition(&g, Strategy::Plain, &four).unwrap()
        );
    }
}
