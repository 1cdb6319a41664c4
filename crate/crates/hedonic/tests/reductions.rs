use hedonic::core::{CoreError, Partition};
use hedonic::dynamics::replay_final;
use hedonic::games::HedonicGame;
use hedonic::instances::{
    check_claim, reduce, Claim, InstanceError, Lit, NamedInstance, ReductionInput, ReductionKind,
    SatFormula, X3CInstance,
};
use hedonic::search::{exists_path_to_is, ReachabilityAnswer, SearchBudget};

/// (x1 ∨ x2 ∨ x3) twice and (¬x1 ∨ ¬x2 ∨ ¬x3) twice.
fn b2() -> SatFormula {
    let p = vec![Lit::pos(0), Lit::pos(1), Lit::pos(2)];
    let n = vec![Lit::neg(0), Lit::neg(1), Lit::neg(2)];
    SatFormula::new(3, vec![p.clone(), p, n.clone(), n]).unwrap()
}

fn cover() -> X3CInstance {
    X3CInstance::new(6, vec![[0, 1, 2], [3, 4, 5], [0, 3, 4]]).unwrap()
}

fn build(kind: ReductionKind, input: impl Into<ReductionInput>, params: &str) -> Result<NamedInstance, InstanceError> {
    reduce(kind, &input.into(), &params.parse().unwrap())
}

fn gadget_cycles_hold(inst: &NamedInstance) -> usize {
    let budget = SearchBudget::default();
    let cycles: Vec<&Claim> = inst.expected.iter().filter(|c| matches!(c, Claim::CycleScript { .. })).collect();
    for c in &cycles {
        let v = check_claim(inst, c, &budget).unwrap();
        assert!(v.holds, "{}: {c:?}: {}", inst.id, v.detail);
    }
    cycles.len()
}

#[test]
fn anonymous_exists_sizes() {
    let inst = build(ReductionKind::SatAhgExists, b2(), "").unwrap();
    assert_eq!(inst.note("constants"), Some("alpha=1024 beta_plus=256 beta_minus=64 gamma=16"));
    let HedonicGame::Anonymous(_) = &inst.game else { panic!("not anonymous") };
    let start = inst.start("initial").unwrap();
    // the clause blocks K_j hold j·alpha agents
    for j in 1..=4 {
        assert!(start.coalitions().iter().any(|c| c.len() == j * 1024), "no block of size {}", j * 1024);
    }
    assert_eq!(gadget_cycles_hold(&inst), 3);
}

#[test]
fn diversity_exists_gadgets() {
    let inst = build(ReductionKind::SatHdgExists, b2(), "").unwrap();
    assert_eq!(gadget_cycles_hold(&inst), 3);
}

#[test]
fn anonymous_converge_builds() {
    let inst = build(ReductionKind::SatAhgConverge, b2(), "").unwrap();
    let start = inst.start("initial").unwrap();
    assert_eq!(start.n(), inst.game.n());
}

#[test]
fn diversity_converge_defaults_are_too_large() {
    let e = build(ReductionKind::SatHdgConverge, b2(), "").unwrap_err();
    assert!(matches!(e, InstanceError::Core(CoreError::TooManyAgents(_))), "{e}");
    let inst = build(ReductionKind::SatHdgConverge, b2(), "alpha=27,beta1_plus=202,beta1_minus=1217,beta2=10966")
        .unwrap();
    assert!(inst.game.n() < 100_000);
    let e = build(ReductionKind::SatHdgConverge, b2(), "alpha=26,beta1_plus=202,beta1_minus=1217,beta2=10966");
    assert!(matches!(e, Err(InstanceError::ConstantInequalityViolation(_))));
}

#[test]
fn symmetric_converge_weight_separates_thresholds() {
    // one surplus set: l = 1, alpha = 76·7/2
    let inst = build(ReductionKind::X3cSymFhgConverge, cover(), "").unwrap();
    assert_eq!(inst.note("constants"), Some("l=1 alpha=266/1"));
    assert!(build(ReductionKind::X3cSymFhgConverge, cover(), "alpha=228").is_err());
    assert!(build(ReductionKind::X3cSymFhgConverge, cover(), "alpha=229").is_ok());
    assert!(build(ReductionKind::X3cSymFhgConverge, cover(), "alpha=303").is_ok());
    assert!(build(ReductionKind::X3cSymFhgConverge, cover(), "alpha=304").is_err());
}

#[test]
fn exact_cover_kinds_build() {
    for kind in ReductionKind::ALL.into_iter().filter(|k| !k.takes_formula()) {
        let inst = build(kind, cover(), "").unwrap();
        for (name, p) in &inst.starts {
            assert_eq!(p.n(), inst.game.n(), "{kind} start {name}");
        }
        let HedonicGame::Fractional(g) = &inst.game else { panic!("{kind} is not fractional") };
        let c = g.classify();
        match kind {
            ReductionKind::X3cSymFhgExists | ReductionKind::X3cSymFhgConverge => assert!(c.symmetric),
            ReductionKind::X3cAsymFhgExists | ReductionKind::X3cAsymFhgConverge => assert!(c.simple_asymmetric),
            _ => assert!(c.simple),
        }
    }
}

#[test]
fn dichotomous_exists_single_clause() {
    let f = SatFormula::new(2, vec![vec![Lit::pos(0), Lit::neg(1)]]).unwrap();
    let inst = build(ReductionKind::SatDhgExists, f, "").unwrap();
    let ans = exists_path_to_is(&inst.game, inst.start("singletons").unwrap(), &SearchBudget::default()).unwrap();
    let ReachabilityAnswer::PathFound { moves, end } = ans else { panic!("expected a path, got {}", ans.label()) };
    assert_eq!(replay_final(&inst.game, &Partition::singletons(inst.game.n()), &moves).unwrap(), end);
}

#[test]
fn dichotomous_converge_builds() {
    let inst = build(ReductionKind::SatDhgConverge, b2(), "").unwrap();
    assert_eq!(inst.game.n(), 2 * 4 + 12);
    assert!(build(ReductionKind::SatDhgConverge, SatFormula::new(1, vec![]).unwrap(), "").is_err());
}

#[test]
fn inputs_outside_the_class_are_rejected() {
    let f = SatFormula::new(2, vec![vec![Lit::pos(0), Lit::pos(1)]]).unwrap();
    for kind in [ReductionKind::SatAhgExists, ReductionKind::SatHdgExists] {
        assert!(matches!(build(kind, f.clone(), ""), Err(InstanceError::FormulaClassViolation(_))));
    }
    assert!(matches!(build(ReductionKind::SatAhgExists, cover(), ""), Err(InstanceError::FormulaClassViolation(_))));
    let e = build(ReductionKind::SatAhgExists, b2(), "delta=3");
    assert!(matches!(e, Err(InstanceError::InconsistentRestrictions(_))));
    let e = build(ReductionKind::SatAhgExists, b2(), "alpha=1000,beta_plus=1000");
    assert!(matches!(e, Err(InstanceError::ConstantInequalityViolation(_))));
}

#[test]
fn kind_names_round_trip() {
    for kind in ReductionKind::ALL {
        assert_eq!(kind.name().parse::<ReductionKind>().unwrap(), kind);
        let ascii = kind.name().replace('→', "->").to_uppercase();
        assert_eq!(ascii.parse::<ReductionKind>().unwrap(), kind);
    }
    assert!("sat->nothing".parse::<ReductionKind>().is_err());
}
