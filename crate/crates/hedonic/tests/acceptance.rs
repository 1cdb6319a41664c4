//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always print; exits nonzero if any criterion fails.
//! Positional numeric arguments restrict the run to those criteria.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hedonic::core::{is_stable, Partition, StabilityKind};
use hedonic::dynamics::{replay, run, run_batch, FilterKind, Policy, RunConfig, RunOutcome};
use hedonic::games::HedonicGame;
use hedonic::instances::{
    build, check_claim, fhg_clique, random, reduce, Claim, FhgFamily, InstanceError, Lit, NamedInstance, RandomSpec,
    ReductionKind, ReductionParams, SatFormula, X3CInstance,
};
use hedonic::potentials::{MonitorRef, ReadingValue};
use hedonic::search::{
    all_paths_converge, bell_number, enumerate_partitions, exists_is_partition, exists_path_to_is, ExistenceAnswer,
    ReachabilityAnswer, SearchBudget, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget() -> SearchBudget {
    SearchBudget::default().with_seconds(600)
}

fn catalog(id: &str) -> Result<NamedInstance, String> {
    build(id).map_err(|e| format!("{id}: {e}"))
}

/// Every expected claim of the instance holds.
fn all_claims(inst: &NamedInstance) -> Result<usize, String> {
    for c in &inst.expected {
        let v = check_claim(inst, c, &budget()).map_err(|e| format!("{}: {c:?}: {e}", inst.id))?;
        ensure(v.holds, || format!("{}: {c:?} fails: {}", inst.id, v.detail))?;
    }
    Ok(inst.expected.len())
}

fn claim(inst: &NamedInstance, c: Claim) -> Result<(), String> {
    let v = check_claim(inst, &c, &budget()).map_err(|e| format!("{}: {c:?}: {e}", inst.id))?;
    ensure(v.holds, || format!("{}: {c:?} fails: {}", inst.id, v.detail))
}

fn quiet(monitors: Vec<MonitorRef>, max_steps: usize) -> RunConfig {
    RunConfig { max_steps, monitors, record_trace: false, ..RunConfig::default() }
}

fn int_reading(o: &RunOutcome, name: &str) -> Option<i64> {
    o.trace().last_readings.iter().find(|r| r.monitor == name).and_then(|r| match r.value {
        ReadingValue::Int(v) => Some(v),
        _ => None,
    })
}

fn c1_ahg15() -> Check {
    let inst = catalog("ahg15")?;
    let t = Instant::now();
    let ans = exists_is_partition(&inst.game, Strategy::TypeReduced, &budget().with_parallelism(1))
        .map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    let ExistenceAnswer::None { checked } = ans else {
        return Err(format!("expected no IS partition, got {ans:?}"));
    };
    ensure(secs < 60.0, || format!("search took {secs:.1}s on one core"))?;
    claim(&inst, Claim::CycleScript { script: "cycle6".into(), start: "cycle".into() })?;
    Ok(format!("{checked} candidates, none IS, {secs:.2}s; cycle6 replays"))
}

fn c2_ahg7() -> Check {
    let inst = catalog("ahg7")?;
    claim(&inst, Claim::CycleScript { script: "cycle6".into(), start: "cycle".into() })?;
    for (script, start) in [("ahg7-from-singletons", "singletons"), ("ahg7-from-grand", "grand")] {
        let moves = inst.script(script).ok_or(format!("missing script {script}"))?;
        let p = inst.start(start).ok_or(format!("missing start {start}"))?;
        replay(&inst.game, p, moves).map_err(|e| format!("{script}: {e}"))?;
    }
    let w = Partition::new(7, vec![vec![0], vec![2, 4, 5], vec![1, 3, 6]]).map_err(|e| e.to_string())?;
    ensure(is_stable(&inst.game, &w, StabilityKind::IS), || "{{1},{3,5,6},{2,4,7}} is not IS".into())?;
    let n = all_claims(&inst)?;
    Ok(format!("cycle, both reach scripts and the IS witness check out; {n} claims"))
}

fn c3_ahg_convergence() -> Check {
    let seeds: Vec<u64> = (0..200).collect();
    let results = run_batch(&seeds, |&seed| -> Result<usize, String> {
        let n = 5 + (seed as usize % 36);
        let game = random(RandomSpec::Ahg { strict: true, natural_sp: true }, n, seed).map_err(|e| e.to_string())?;
        let cap = n * n * n + n * n;
        let mut steps = 0;
        for policy in [Policy::Lexicographic, Policy::SeededRandom(seed)] {
            let cfg = quiet(vec![MonitorRef::Lambda, MonitorRef::Gamma], cap + 1);
            let o = run(&game, &Partition::singletons(n), &policy, &cfg).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(o.is_converged(), || format!("seed {seed} n={n} {policy:?}: not converged after {}", o.steps()))?;
            ensure(o.steps() <= cap, || format!("seed {seed}: {} steps > n^3+n^2", o.steps()))?;
            if let Some((k, v)) = o.trace().violations.first() {
                return Err(format!("seed {seed} n={n} {policy:?} step {k}: {v}"));
            }
            let lambda = int_reading(&o, "lambda").unwrap_or(0);
            ensure(lambda as usize <= n * n, || format!("seed {seed}: final lambda {lambda} > n^2"))?;
            steps = steps.max(o.steps());
        }
        Ok(steps)
    });
    let mut longest = 0;
    for r in results {
        longest = longest.max(r?);
    }
    Ok(format!("200 games x 2 policies converge; longest run {longest} steps"))
}

fn c4_ahg_weak() -> Check {
    let seeds: Vec<u64> = (0..200).collect();
    let results = run_batch(&seeds, |&seed| -> Result<usize, String> {
        let n = 2 + (seed as usize % 19);
        let game = random(RandomSpec::Ahg { strict: false, natural_sp: true }, n, seed).map_err(|e| e.to_string())?;
        let mut steps = 0;
        for policy in [Policy::Lexicographic, Policy::SeededRandom(seed)] {
            let o = run(&game, &Partition::singletons(n), &policy, &quiet(vec![], 1_000_000))
                .map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(o.is_converged(), || format!("seed {seed} n={n} {policy:?}: {} steps, not converged", o.steps()))?;
            steps = steps.max(o.steps());
        }
        Ok(steps)
    });
    let mut longest = 0;
    for r in results {
        longest = longest.max(r?);
    }
    Ok(format!("200 games x 2 policies converge; longest run {longest} steps"))
}

fn c5_hdg_cycles() -> Check {
    let mut total = 0;
    for id in ["hdg12-no-sp", "hdg10-weak", "hdg26-sp-strict-solitary", "hdg239-sp-strict-singletons"] {
        let inst = catalog(id)?;
        total += all_claims(&inst)?;
    }
    let hdg26 = catalog("hdg26-sp-strict-solitary")?;
    claim(&hdg26, Claim::SolitaryHomogeneous { script: "cycle8".into() })?;
    claim(&hdg26, Claim::Strict { holds: true })?;
    claim(&hdg26, Claim::NaturalSp { holds: true })?;
    Ok(format!("4 constructions, {total} claims hold"))
}

fn c6_hdg_forced() -> Check {
    for id in ["hdg10-forced-strict", "hdg10-forced-weak-sp"] {
        let inst = catalog(id)?;
        claim(&inst, Claim::ForcedCycle { script: "cycle6".into(), start: "cycle".into() })?;
        let start = inst.start("cycle").ok_or("missing start")?;
        let ans = all_paths_converge(&inst.game, start, &budget()).map_err(|e| e.to_string())?;
        ensure(matches!(ans, ReachabilityAnswer::CycleReachable { .. }), || format!("{id}: {}", ans.label()))?;
        all_claims(&inst)?;
    }
    Ok("both variants: one admissible move per cycle state; cycle reachable".into())
}

fn c7_hdg_convergence() -> Check {
    let seeds: Vec<u64> = (0..200).collect();
    let results = run_batch(&seeds, |&seed| -> Result<usize, String> {
        let n = 2 + (seed as usize % 23);
        let spec = RandomSpec::Hdg { strict: true, natural_sp: true, reds: None };
        let game = random(spec, n, seed).map_err(|e| e.to_string())?;
        let cap = n.pow(5);
        let mut steps = 0;
        for base in [Policy::Lexicographic, Policy::SeededRandom(seed)] {
            let policy = base.filtered(FilterKind::SolitaryHomogeneity);
            let o = run(&game, &Partition::singletons(n), &policy, &quiet(vec![], cap + 1))
                .map_err(|e| format!("seed {seed} n={n}: {e}"))?;
            ensure(o.is_converged(), || format!("seed {seed} n={n}: {} steps, not converged", o.steps()))?;
            ensure(o.steps() <= cap, || format!("seed {seed}: {} steps > n^5", o.steps()))?;
            steps = steps.max(o.steps());
        }
        Ok(steps)
    });
    let mut longest = 0;
    for r in results {
        longest = longest.max(r?);
    }
    Ok(format!("200 games x 2 policies converge with the shape invariant intact; longest run {longest} steps"))
}

fn c8_fhg15() -> Check {
    let inst = catalog("fhg15")?;
    let ans = exists_is_partition(&inst.game, Strategy::PrunedFHG, &budget()).map_err(|e| e.to_string())?;
    let ExistenceAnswer::None { checked } = ans else {
        return Err(format!("expected no IS partition, got {ans:?}"));
    };
    let moves = inst.script("rotation").ok_or("missing rotation script")?;
    ensure(moves.len() == 3, || format!("rotation has {} moves", moves.len()))?;
    replay(&inst.game, inst.start("cycle").ok_or("missing start")?, moves).map_err(|e| e.to_string())?;
    Ok(format!("{checked} pruned candidates, none IS; 3-move rotation replays"))
}

fn c9_fhg_simple_symmetric() -> Check {
    let seeds: Vec<u64> = (0..200).collect();
    let results = run_batch(&seeds, |&seed| -> Result<(), String> {
        let n = 2 + (seed as usize % 29);
        let game = random(RandomSpec::Fhg(FhgFamily::SimpleSymmetric), n, seed).map_err(|e| e.to_string())?;
        let cap = n * (n - 1) / 2;
        for policy in [Policy::Lexicographic, Policy::SeededRandom(seed)] {
            let o = run(&game, &Partition::singletons(n), &policy, &quiet(vec![MonitorRef::Gamma], cap + 1))
                .map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(o.is_converged() && o.steps() <= cap, || format!("seed {seed} n={n}: {} steps", o.steps()))?;
            if let Some((k, v)) = o.trace().violations.first() {
                return Err(format!("seed {seed} step {k}: {v}"));
            }
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut counts = Vec::new();
    for k in 3..=5 {
        let inst = fhg_clique(k).map_err(|e| e.to_string())?;
        all_claims(&inst)?;
        let len = inst.script("phase2").ok_or("missing phase2")?.len();
        let want = (k - 1) * k * (k + 1) / 6;
        ensure(len == want, || format!("k={k}: {len} second-phase moves, expected {want}"))?;
        counts.push(len);
    }
    Ok(format!("200 games within n(n-1)/2 steps; clique scripts k=3,4,5 run {counts:?} moves"))
}

fn c10_fhg_acyclic() -> Check {
    let tri = catalog("fhg-triangle")?;
    let ans = all_paths_converge(&tri.game, &Partition::singletons(3), &budget()).map_err(|e| e.to_string())?;
    ensure(matches!(ans, ReachabilityAnswer::CycleReachable { .. }), || format!("triangle: {}", ans.label()))?;
    let seeds: Vec<u64> = (0..500).collect();
    let results = run_batch(&seeds, |&seed| -> Result<usize, String> {
        let n = 1 + (seed as usize % 20);
        let game = random(RandomSpec::Fhg(FhgFamily::Dag), n, seed).map_err(|e| e.to_string())?;
        let cap = n.pow(4);
        let mut steps = 0;
        for policy in [Policy::Lexicographic, Policy::SeededRandom(seed)] {
            let o = run(&game, &Partition::singletons(n), &policy, &quiet(vec![MonitorRef::Lex], cap + 1))
                .map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(o.is_converged() && o.steps() <= cap, || format!("seed {seed} n={n}: {} steps", o.steps()))?;
            if let Some((k, v)) = o.trace().violations.first() {
                return Err(format!("seed {seed} step {k}: {v}"));
            }
            steps = steps.max(o.steps());
        }
        Ok(steps)
    });
    let mut longest = 0;
    for r in results {
        longest = longest.max(r?);
    }
    Ok(format!("triangle cycles; 500 DAG games converge with the lex potential falling, longest {longest} steps"))
}

fn c11_dhg3() -> Check {
    let inst = catalog("dhg3")?;
    let s = Partition::singletons(3);
    let path = exists_path_to_is(&inst.game, &s, &budget()).map_err(|e| e.to_string())?;
    ensure(matches!(path, ReachabilityAnswer::NoPath { .. }), || format!("path search: {}", path.label()))?;
    let conv = all_paths_converge(&inst.game, &s, &budget()).map_err(|e| e.to_string())?;
    ensure(matches!(conv, ReachabilityAnswer::CycleReachable { .. }), || format!("convergence: {}", conv.label()))?;
    let all: Vec<Partition> = enumerate_partitions(3).map_err(|e| e.to_string())?.collect();
    ensure(bell_number(3) == 5u32.into() && all.len() == 5, || format!("{} partitions of 3 agents", all.len()))?;
    let stable: Vec<&Partition> = all.iter().filter(|p| is_stable(&inst.game, p, StabilityKind::IS)).collect();
    ensure(stable == vec![&Partition::grand(3)], || format!("IS partitions: {stable:?}"))?;
    Ok("no path from singletons, cycle reachable, grand coalition the unique IS partition of 5".into())
}

fn c12_dhg_symmetric() -> Check {
    let seeds: Vec<u64> = (0..300).collect();
    let results = run_batch(&seeds, |&seed| -> Result<usize, String> {
        let n = 1 + (seed as usize % 12);
        let density = 0.1 + 0.2 * (seed % 5) as f64;
        let game = random(RandomSpec::Dhg { symmetric: true, density }, n, seed).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let start = Partition::from_labels(&labels);
        let mut steps = 0;
        for policy in [Policy::Lexicographic, Policy::SeededRandom(seed)] {
            let o = run(&game, &start, &policy, &quiet(vec![], 1_000_000)).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(o.is_converged(), || format!("seed {seed} n={n}: {} steps, not converged", o.steps()))?;
            steps = steps.max(o.steps());
        }
        Ok(steps)
    });
    let mut longest = 0;
    for r in results {
        longest = longest.max(r?);
    }
    Ok(format!("300 games from random starts converge; longest run {longest} steps"))
}

fn sat_oracle(f: &SatFormula) -> bool {
    (0u32..1 << f.num_vars).any(|mask| {
        f.clauses.iter().all(|c| c.iter().any(|l| (mask >> l.var & 1 == 1) == l.positive))
    })
}

/// Formulas over at most three variables, satisfiable and not.
pub fn small_formulas() -> Vec<SatFormula> {
    let (p, q) = (Lit::pos, Lit::neg);
    let raw: Vec<(usize, Vec<Vec<Lit>>)> = vec![
        (1, vec![vec![p(0)]]),
        (1, vec![vec![p(0)], vec![q(0)]]),
        (2, vec![vec![p(0), p(1)], vec![q(0)]]),
        (2, vec![vec![p(0), p(1)], vec![q(0), p(1)], vec![q(1)]]),
        (2, vec![vec![p(0), q(1)], vec![q(0), p(1)]]),
        (3, vec![vec![p(0), q(1)], vec![p(1), p(2)], vec![q(2)]]),
        (3, vec![vec![p(0)], vec![p(1)], vec![q(0), q(1)]]),
        (3, vec![vec![p(0), p(1), p(2)], vec![q(0)], vec![q(1)]]),
    ];
    raw.into_iter().map(|(v, c)| SatFormula::new(v, c).expect("well-formed")).collect()
}

fn b2_formula() -> SatFormula {
    let pos = vec![Lit::pos(0), Lit::pos(1), Lit::pos(2)];
    let neg = vec![Lit::neg(0), Lit::neg(1), Lit::neg(2)];
    SatFormula::new(3, vec![pos.clone(), pos, neg.clone(), neg]).expect("well-formed")
}

fn c13_reductions() -> Check {
    let mut agree = 0;
    for f in small_formulas() {
        let inst = reduce(ReductionKind::SatDhgExists, &f.clone().into(), &ReductionParams::new())
            .map_err(|e| e.to_string())?;
        let start = inst.start("singletons").ok_or("missing start")?;
        let ans = exists_path_to_is(&inst.game, start, &budget()).map_err(|e| e.to_string())?;
        let found = match ans {
            ReachabilityAnswer::PathFound { .. } => true,
            ReachabilityAnswer::NoPath { .. } => false,
            other => return Err(format!("{}: {}", f.to_dimacs().trim(), other.label())),
        };
        ensure(found == sat_oracle(&f), || format!("formula {:?}: path {found}, sat {}", f.clauses, !found))?;
        agree += 1;
    }
    // the variable gadget of the anonymous-game reduction, replayed alone
    let a1 = reduce(ReductionKind::SatAhgExists, &b2_formula().into(), &ReductionParams::new())
        .map_err(|e| e.to_string())?;
    let gadgets = a1.expected.iter().filter(|c| matches!(c, Claim::CycleScript { .. })).count();
    ensure(gadgets == 3, || format!("{gadgets} gadget cycles"))?;
    all_claims(&a1)?;
    // constants: the defaults build, violations are rejected at build time
    let bad = |kind: ReductionKind, input: hedonic::instances::ReductionInput, params: &str| -> Result<(), String> {
        let params: ReductionParams = params.parse().map_err(|e: InstanceError| e.to_string())?;
        match reduce(kind, &input, &params) {
            Err(InstanceError::ConstantInequalityViolation(_)) => Ok(()),
            other => Err(format!("{kind} with {params:?}: expected a constant violation, got {:?}", other.map(|i| i.id))),
        }
    };
    let f = b2_formula();
    bad(ReductionKind::SatAhgExists, f.clone().into(), "alpha=10,beta_plus=20")?;
    bad(ReductionKind::SatAhgConverge, f.clone().into(), "alpha=50,beta1_plus=50")?;
    bad(ReductionKind::SatHdgExists, f.clone().into(), "alpha=2")?;
    bad(ReductionKind::SatHdgConverge, f.clone().into(), "alpha=2")?;
    let x = X3CInstance::new(6, vec![[0, 1, 2], [3, 4, 5], [0, 3, 4]]).map_err(|e| e.to_string())?;
    bad(ReductionKind::X3cSymFhgConverge, x.clone().into(), "alpha=100")?;
    for kind in ReductionKind::ALL {
        let input: hedonic::instances::ReductionInput =
            if kind.takes_formula() { b2_formula().into() } else { x.clone().into() };
        match reduce(kind, &input, &ReductionParams::new()) {
            Ok(_) | Err(InstanceError::Core(hedonic::core::CoreError::TooManyAgents(_))) => {}
            Err(e) => return Err(format!("{kind} defaults: {e}")),
        }
    }
    Ok(format!("{agree} formulas match brute force; 3 gadget cycles replay; constant checks fire"))
}

fn c14_oracles() -> Check {
    let seeds: Vec<u64> = (0..100).collect();
    let results = run_batch(&seeds, |&seed| -> Result<(), String> {
        let n = 1 + (seed as usize % 8);
        let spec = RandomSpec::Ahg { strict: seed % 2 == 0, natural_sp: seed % 3 == 0 };
        let g = random(spec, n, seed).map_err(|e| e.to_string())?;
        agree(&g, Strategy::TypeReduced, seed)?;
        let n = 1 + (seed as usize % 7);
        let family = if seed % 2 == 0 { FhgFamily::Symmetric } else { FhgFamily::SymmetricNonnegative };
        let g = random(RandomSpec::Fhg(family), n, seed).map_err(|e| e.to_string())?;
        agree(&g, Strategy::PrunedFHG, seed)
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok("100 AHGs and 100 symmetric FHGs: both strategies agree".into())
}

fn agree(g: &HedonicGame, s: Strategy, seed: u64) -> Result<(), String> {
    let b = budget().with_parallelism(1);
    let plain = exists_is_partition(g, Strategy::Plain, &b).map_err(|e| e.to_string())?;
    let other = exists_is_partition(g, s, &b).map_err(|e| e.to_string())?;
    for a in [&plain, &other] {
        if let Some(w) = a.witness() {
            ensure(is_stable(g, w, StabilityKind::IS), || format!("seed {seed}: witness {w:?} is not IS"))?;
        }
        ensure(!matches!(a, ExistenceAnswer::BudgetExhausted { .. }), || format!("seed {seed}: budget"))?;
    }
    ensure(plain.witness().is_some() == other.witness().is_some(), || {
        format!("seed {seed} {s:?}: plain {plain:?} vs {other:?}")
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        (1, "ahg15-no-is", Duration::from_secs(60), c1_ahg15),
        (2, "ahg7-cycle", Duration::from_secs(1), c2_ahg7),
        (3, "ahg-convergence", Duration::from_secs(300), c3_ahg_convergence),
        (4, "ahg-weak-sp-termination", Duration::from_secs(300), c4_ahg_weak),
        (5, "hdg-cycles", Duration::from_secs(5), c5_hdg_cycles),
        (6, "hdg-forced-cycles", Duration::from_secs(10), c6_hdg_forced),
        (7, "hdg-convergence", Duration::from_secs(600), c7_hdg_convergence),
        (8, "fhg15-no-is", Duration::from_secs(600), c8_fhg15),
        (9, "fhg-simple-symmetric", Duration::from_secs(60), c9_fhg_simple_symmetric),
        (10, "fhg-acyclic", Duration::from_secs(300), c10_fhg_acyclic),
        (11, "dhg3-forced-cycle", Duration::from_secs(1), c11_dhg3),
        (12, "dhg-symmetric-convergence", Duration::from_secs(120), c12_dhg_symmetric),
        (13, "reductions", Duration::from_secs(120), c13_reductions),
        (14, "oracle-equivalence", Duration::from_secs(300), c14_oracles),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (k, name, limit, f) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let el = t.elapsed();
        let r = match r {
            Ok(d) if el > limit => Err(format!("{d}; took {:.1}s, limit {}s", el.as_secs_f64(), limit.as_secs())),
            r => r,
        };
        match r {
            Ok(d) => println!("criterion {k:>2} {name}: PASS ({:.2}s) {d}", el.as_secs_f64()),
            Err(d) => {
                failed += 1;
                println!("criterion {k:>2} {name}: FAIL ({:.2}s) {d}", el.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
