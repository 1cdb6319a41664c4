use hedonic::core::Partition;
use hedonic::dynamics::{run, Policy, RunConfig};
use hedonic::instances::{
    build, catalog_ids, random, reduce, FhgFamily, Lit, NamedInstance, RandomSpec, ReductionKind, ReductionParams,
    SatFormula, X3CInstance,
};
use hedonic::potentials::MonitorRef;
use hedonic_cli::{InstanceFile, TraceFile};

/// parse ∘ serialize is the identity, on the document and on the instance.
fn round_trip(inst: &NamedInstance) {
    let doc = InstanceFile::from_instance(inst);
    let text = doc.to_json();
    let back = InstanceFile::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", inst.id));
    assert_eq!(back, doc, "{}", inst.id);
    let rebuilt = back.to_instance().unwrap_or_else(|e| panic!("{}: {e}", inst.id));
    assert_eq!(rebuilt.id, inst.id);
    assert_eq!(rebuilt.game, inst.game, "{}", inst.id);
    assert_eq!(rebuilt.starts, inst.starts, "{}", inst.id);
    assert_eq!(rebuilt.scripts, inst.scripts, "{}", inst.id);
    assert_eq!(rebuilt.expected, inst.expected, "{}", inst.id);
    assert_eq!(rebuilt.notes, inst.notes, "{}", inst.id);
    assert_eq!(InstanceFile::from_instance(&rebuilt).to_json(), text, "{}", inst.id);
}

#[test]
fn every_bundled_instance() {
    for id in catalog_ids().into_iter().chain(["fhg-clique(4)", "fhg-clique(5)"]) {
        round_trip(&build(id).unwrap());
    }
}

#[test]
fn random_games_of_every_class() {
    let specs = [
        RandomSpec::Ahg { strict: true, natural_sp: true },
        RandomSpec::Ahg { strict: false, natural_sp: false },
        RandomSpec::Hdg { strict: true, natural_sp: true, reds: Some(3) },
        RandomSpec::Hdg { strict: false, natural_sp: false, reds: None },
        RandomSpec::Fhg(FhgFamily::General),
        RandomSpec::Fhg(FhgFamily::Dag),
        RandomSpec::Dhg { symmetric: true, density: 0.4 },
        RandomSpec::Dhg { symmetric: false, density: 0.7 },
    ];
    for (k, spec) in specs.into_iter().enumerate() {
        let game = random(spec, 7, k as u64).unwrap();
        round_trip(&NamedInstance::new(format!("random-{k}"), game));
    }
}

#[test]
fn reduction_gadgets() {
    let f = SatFormula::new(2, vec![vec![Lit::pos(0), Lit::neg(1)], vec![Lit::pos(1)]]).unwrap();
    let x = X3CInstance::new(6, vec![[0, 1, 2], [3, 4, 5], [0, 3, 4]]).unwrap();
    let p = ReductionParams::new();
    round_trip(&reduce(ReductionKind::SatDhgExists, &f.clone().into(), &p).unwrap());
    round_trip(&reduce(ReductionKind::SatDhgConverge, &f.into(), &p).unwrap());
    for kind in ReductionKind::ALL.into_iter().filter(|k| !k.takes_formula()) {
        round_trip(&reduce(kind, &x.clone().into(), &p).unwrap());
    }
}

#[test]
fn traces_round_trip_and_revalidate() {
    let inst = build("ahg7").unwrap();
    let script = Policy::Scripted(inst.script("cycle6").unwrap().to_vec());
    let sp = random(RandomSpec::Ahg { strict: true, natural_sp: true }, 9, 2).unwrap();
    let cases = [
        (&inst.game, inst.start("cycle").unwrap().clone(), script, vec![MonitorRef::Gamma]),
        (&inst.game, Partition::singletons(7), Policy::SeededRandom(9), vec![MonitorRef::Gamma]),
        (&sp, Partition::singletons(9), Policy::Lexicographic, vec![MonitorRef::Gamma, MonitorRef::Lambda]),
    ];
    for (game, from, policy, monitors) in cases {
        let cfg = RunConfig { monitors, ..RunConfig::default() };
        let out = run(game, &from, &policy, &cfg).unwrap();
        let doc = TraceFile::from_outcome(&out, None, None);
        let back = TraceFile::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        back.validate(game).unwrap();
        let t = back.to_trace(game.n()).unwrap();
        assert_eq!(t.steps, out.trace().steps);
        assert_eq!(t.start_readings, out.trace().start_readings);
    }
}

#[test]
fn tampered_traces_are_rejected() {
    let inst = build("ahg7").unwrap();
    let out = run(&inst.game, &Partition::singletons(7), &Policy::Lexicographic, &RunConfig::default()).unwrap();
    let doc = TraceFile::from_outcome(&out, None, None);
    assert!(!doc.steps.is_empty());
    let mut bad = doc.clone();
    bad.steps[0].partition = vec![(0..7).collect()];
    assert!(bad.validate(&inst.game).is_err());
    let mut bad = doc.clone();
    bad.steps.pop();
    assert!(bad.validate(&inst.game).is_err(), "step count no longer matches the outcome");
}
