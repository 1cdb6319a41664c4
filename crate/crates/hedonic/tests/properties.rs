//! Structural invariants as proptest properties over random games and
//! random partitions.

use std::cmp::Ordering;

use hedonic::core::{
    apply, enumerate_deviations, is_deviation_of_kind, is_stable, Partition, Preferences, StabilityKind, TargetRef,
};
use hedonic::dynamics::{run, validate_trace, Policy, RunConfig};
use hedonic::games::{HedonicGame, Rational};
use hedonic::instances::{random, FhgFamily, RandomSpec};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = RandomSpec> {
    prop_oneof![
        (any::<bool>(), any::<bool>()).prop_map(|(strict, natural_sp)| RandomSpec::Ahg { strict, natural_sp }),
        (any::<bool>(), any::<bool>()).prop_map(|(strict, natural_sp)| RandomSpec::Hdg {
            strict,
            natural_sp,
            reds: None
        }),
        prop_oneof![
            Just(FhgFamily::SimpleSymmetric),
            Just(FhgFamily::Dag),
            Just(FhgFamily::Symmetric),
            Just(FhgFamily::General),
        ]
        .prop_map(RandomSpec::Fhg),
        (any::<bool>(), 0.0..1.0f64).prop_map(|(symmetric, density)| RandomSpec::Dhg { symmetric, density }),
    ]
}

/// A random game together with a random partition of its agents.
fn game_and_partition() -> impl Strategy<Value = (HedonicGame, Partition)> {
    (spec_strategy(), 1usize..9, any::<u64>()).prop_flat_map(|(spec, n, seed)| {
        let game = random(spec, n, seed).expect("valid spec");
        proptest::collection::vec(0..n, n).prop_map(move |labels| (game.clone(), Partition::from_labels(&labels)))
    })
}

/// Direct reading of the IS definition, independent of the library's
/// candidate enumeration.
fn naive_is_moves(g: &HedonicGame, p: &Partition) -> usize {
    let mut count = 0;
    for a in 0..p.n() {
        let own = p.coalition_of(a).members().to_vec();
        let mut targets: Vec<Vec<usize>> = p
            .coalitions()
            .iter()
            .filter(|c| !c.contains(a))
            .map(|c| c.members().to_vec())
            .collect();
        if own.len() > 1 {
            targets.push(Vec::new());
        }
        for t in targets {
            let mut joined = t.clone();
            joined.push(a);
            joined.sort_unstable();
            let gains = g.compare_members(a, &joined, &own) == Ordering::Greater;
            let welcomed = t.iter().all(|&j| g.compare_members(j, &joined, &t) != Ordering::Less);
            if gains && welcomed {
                count += 1;
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels(labels in proptest::collection::vec(0usize..6, 1..10), shift in 1usize..5) {
        let p = Partition::from_labels(&labels);
        let relabelled: Vec<usize> = labels.iter().map(|&l| (l + shift) % 6).collect();
        let q = Partition::from_labels(&relabelled);
        prop_assert_eq!(p.canonical(), q.canonical());
        prop_assert_eq!(&p, &q);
        let r = Partition::new(p.n(), p.to_vecs()).unwrap();
        prop_assert_eq!(p, r);
    }

    #[test]
    fn moves_preserve_partitions((g, p) in game_and_partition()) {
        for mv in enumerate_deviations(&g, &p, StabilityKind::IS) {
            let q = apply(&p, &mv).unwrap();
            prop_assert_eq!(q.n(), p.n());
            let total: usize = q.coalitions().iter().map(|c| c.len()).sum();
            prop_assert_eq!(total, p.n());
            match &mv.target {
                TargetRef::NewSingleton => prop_assert_eq!(q.coalition_of(mv.agent).len(), 1),
                TargetRef::ExistingCoalition(t) => {
                    prop_assert_eq!(q.coalition_of(mv.agent), &t.with(mv.agent))
                }
            }
        }
    }

    #[test]
    fn deviation_kinds_nest((g, p) in game_and_partition()) {
        let nash = enumerate_deviations(&g, &p, StabilityKind::Nash);
        let is = enumerate_deviations(&g, &p, StabilityKind::IS);
        let cis = enumerate_deviations(&g, &p, StabilityKind::CIS);
        prop_assert!(is.iter().all(|m| nash.contains(m)));
        prop_assert!(cis.iter().all(|m| is.contains(m)));
        for m in &is {
            prop_assert!(is_deviation_of_kind(&g, &p, m, StabilityKind::IS).unwrap());
        }
        prop_assert_eq!(is.is_empty(), is_stable(&g, &p, StabilityKind::IS));
        prop_assert_eq!(is.len(), naive_is_moves(&g, &p));
    }

    #[test]
    fn traces_revalidate((g, p) in game_and_partition(), seed in any::<u64>()) {
        let cfg = RunConfig { max_steps: 500, ..RunConfig::default() };
        let out = run(&g, &p, &Policy::SeededRandom(seed), &cfg).unwrap();
        prop_assert!(validate_trace(&g, out.trace()).is_ok());
        if out.is_converged() {
            let last = out.trace().state(out.steps()).unwrap();
            prop_assert!(is_stable(&g, last, StabilityKind::IS));
        }
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = Rational::new(p, q).unwrap();
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(r, back);
    }
}
