use hedonic::dynamics::{hdg_homogeneous, reach_state_scripts, run, HomogeneousColor, Policy, RunConfig, RunOutcome};
use hedonic::instances::{build, catalog_ids, check_claim, InstanceError};
use hedonic::search::SearchBudget;

#[test]
fn every_bundled_claim_holds() {
    let budget = SearchBudget::default().with_seconds(120);
    for id in catalog_ids().into_iter().chain(["fhg-clique(4)", "fhg-clique(5)"]) {
        let inst = build(id).unwrap();
        assert_eq!(inst.id, id);
        assert!(!inst.expected.is_empty(), "{id} has no claims");
        for (name, p) in &inst.starts {
            assert_eq!(p.n(), inst.game.n(), "{id} start {name}");
        }
        for c in &inst.expected {
            let v = check_claim(&inst, c, &budget).unwrap();
            assert!(v.holds, "{id}: {c:?}: {}", v.detail);
        }
    }
}

#[test]
fn unknown_ids() {
    for id in ["ahg16", "fhg-clique(0)", "fhg-clique(x)", ""] {
        assert!(matches!(build(id), Err(InstanceError::UnknownId(_))), "{id}");
    }
}

#[test]
fn scripted_run_reports_the_cycle() {
    let inst = build("ahg7").unwrap();
    let moves = inst.script("cycle6").unwrap().to_vec();
    let out = run(&inst.game, inst.start("cycle").unwrap(), &Policy::Scripted(moves), &RunConfig::default()).unwrap();
    assert!(matches!(out, RunOutcome::CycleDetected { prefix_len: 0, cycle_len: 6, .. }), "{out:?}");
}

#[test]
fn homogeneous_coalition_scripts() {
    for k in 2..=7 {
        for color in [HomogeneousColor::Blue, HomogeneousColor::Red] {
            let s = hdg_homogeneous(k, color).unwrap();
            assert!(s.check().unwrap(), "k = {k} {color:?}");
        }
    }
    for s in reach_state_scripts().unwrap() {
        assert!(s.check().unwrap(), "{}", s.id);
    }
}
