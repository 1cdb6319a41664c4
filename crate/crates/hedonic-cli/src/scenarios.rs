//! Scenarios behind `verify-paper`: each one re-derives a published result
//! from the library and reports pass or fail with a short detail.

use hedonic::core::{is_stable, Partition, StabilityKind};
use hedonic::dynamics::{replay, run, run_batch, FilterKind, Policy, RunConfig, RunOutcome};
use hedonic::games::HedonicGame;
use hedonic::instances::{
    build, check_claim, fhg_clique, random, reduce, Claim, FhgFamily, InstanceError, Lit,
    NamedInstance, RandomSpec, ReductionInput, ReductionKind, ReductionParams, SatFormula, X3CInstance,
};
use hedonic::potentials::{MonitorRef, ReadingValue};
use hedonic::search::{
    all_paths_converge, enumerate_partitions, exists_is_partition, exists_path_to_is, ExistenceAnswer,
    ReachabilityAnswer, SearchBudget, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

pub struct Scenario {
    pub id: String,
    /// The result being checked, in one line.
    pub claim: String,
    run: Box<dyn Fn(&SearchBudget) -> Outcome>,
}

impl Scenario {
    fn new(id: &str, claim: &str, run: impl Fn(&SearchBudget) -> Outcome + 'static) -> Self {
        Scenario { id: id.into(), claim: claim.into(), run: Box::new(run) }
    }

    pub fn run(&self, budget: &SearchBudget) -> Outcome {
        (self.run)(budget)
    }
}

pub fn scenarios() -> Vec<Scenario> {
    let s = |id, claim, run: fn(&SearchBudget) -> Outcome| Scenario::new(id, claim, run);
    vec![
        s("ahg15-no-is", "the 15-agent anonymous game has no IS partition", ahg15),
        s("ahg7-cycle", "IS dynamics cycle in the 7-agent anonymous game, yet IS partitions are reachable", ahg7),
        s("ahg-convergence", "strict single-peaked anonymous games converge from singletons", ahg_convergence),
        s("ahg-weak-sp-termination", "weakly single-peaked anonymous games still converge", ahg_weak),
        s("hdg-cycles", "diversity games cycle once any one assumption is dropped", hdg_cycles),
        s("hdg-forced-cycles", "some diversity games can only cycle from the start state", hdg_forced),
        s("hdg-convergence", "solitary-homogeneity dynamics converge in strict single-peaked diversity games", hdg_conv),
        s("fhg15-no-is", "the 15-agent fractional game has no IS partition", fhg15),
        s("fhg-simple-symmetric", "simple symmetric fractional games converge within n(n-1)/2 steps", fhg_simple),
        s("fhg-acyclic", "acyclic simple asymmetric fractional games converge, the triangle does not", fhg_acyclic),
        s("dhg3-forced-cycle", "from singletons the 3-agent dichotomous game necessarily cycles", dhg3),
        s("dhg-symmetric-convergence", "symmetric dichotomous games converge from any start", dhg_symmetric),
        s("reductions", "reduction gadgets build, replay and agree with brute force on toy inputs", reductions),
        s("oracle-equivalence", "pruned searches agree with plain enumeration", oracles),
    ]
}

/// `verify-paper` accepts a scenario id or a bundled instance id; the latter
/// checks every claim bundled with the instance.
pub fn lookup(id: &str) -> Option<Scenario> {
    if let Some(s) = scenarios().into_iter().find(|s| s.id == id) {
        return Some(s);
    }
    let inst = build(id).ok()?;
    Some(Scenario::new(id, "every bundled claim of the instance holds", move |b| {
        Ok(format!("{} claims hold", all_claims(&inst, b)?))
    }))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog(id: &str) -> Result<NamedInstance, String> {
    build(id).map_err(|e| format!("{id}: {e}"))
}

pub fn all_claims(inst: &NamedInstance, b: &SearchBudget) -> Result<usize, String> {
    for c in &inst.expected {
        claim(inst, c.clone(), b)?;
    }
    Ok(inst.expected.len())
}

fn claim(inst: &NamedInstance, c: Claim, b: &SearchBudget) -> Result<(), String> {
    let v = check_claim(inst, &c, b).map_err(|e| format!("{}: {c:?}: {e}", inst.id))?;
    ensure(v.holds, || format!("{}: {c:?} fails: {}", inst.id, v.detail))
}

fn quiet(monitors: Vec<MonitorRef>, max_steps: usize) -> RunConfig {
    RunConfig { max_steps, monitors, record_trace: false, ..RunConfig::default() }
}

fn first_violation(o: &RunOutcome, what: &str) -> Result<(), String> {
    match o.trace().violations.first() {
        Some((k, v)) => Err(format!("{what} step {k}: {v}")),
        None => Ok(()),
    }
}

/// Runs `f` over seeds `0..count` and reports the longest run.
fn over_seeds(count: u64, f: impl Fn(u64) -> Result<usize, String> + Sync + Send) -> Result<usize, String> {
    let seeds: Vec<u64> = (0..count).collect();
    let mut longest = 0;
    for r in run_batch(&seeds, |&s| f(s)) {
        longest = longest.max(r?);
    }
    Ok(longest)
}

/// Runs the lexicographic and the seeded random policy from `start` and
/// checks each outcome converged within `cap` steps without violations.
fn converge_both(
    game: &HedonicGame,
    start: &Partition,
    seed: u64,
    cap: usize,
    monitors: &[MonitorRef],
    filter: Option<FilterKind>,
) -> Result<usize, String> {
    let mut longest = 0;
    for base in [Policy::Lexicographic, Policy::SeededRandom(seed)] {
        let policy = match filter {
            Some(f) => base.filtered(f),
            None => base,
        };
        let what = format!("seed {seed} n={} {policy:?}", game.n());
        let o = run(game, start, &policy, &quiet(monitors.to_vec(), cap + 1)).map_err(|e| format!("{what}: {e}"))?;
        ensure(o.is_converged() && o.steps() <= cap, || format!("{what}: {} steps, cap {cap}", o.steps()))?;
        first_violation(&o, &what)?;
        longest = longest.max(o.steps());
    }
    Ok(longest)
}

fn ahg15(b: &SearchBudget) -> Outcome {
    let inst = catalog("ahg15")?;
    let ans = exists_is_partition(&inst.game, Strategy::TypeReduced, b).map_err(|e| e.to_string())?;
    let ExistenceAnswer::None { checked } = ans else {
        return Err(format!("expected no IS partition, got {ans:?}"));
    };
    claim(&inst, Claim::CycleScript { script: "cycle6".into(), start: "cycle".into() }, b)?;
    Ok(format!("{checked} type-reduced candidates, none IS"))
}

fn ahg7(b: &SearchBudget) -> Outcome {
    let inst = catalog("ahg7")?;
    let n = all_claims(&inst, b)?;
    for (script, start) in [("ahg7-from-singletons", "singletons"), ("ahg7-from-grand", "grand")] {
        let moves = inst.script(script).ok_or(format!("missing script {script}"))?;
        let p = inst.start(start).ok_or(format!("missing start {start}"))?;
        replay(&inst.game, p, moves).map_err(|e| format!("{script}: {e}"))?;
    }
    Ok(format!("6-step cycle replays; IS reached from singletons and grand; {n} claims"))
}

fn ahg_convergence(_: &SearchBudget) -> Outcome {
    let longest = over_seeds(200, |seed| {
        let n = 5 + (seed as usize % 36);
        let game = random(RandomSpec::Ahg { strict: true, natural_sp: true }, n, seed).map_err(|e| e.to_string())?;
        let cap = n * n * n + n * n;
        let monitors = [MonitorRef::Lambda, MonitorRef::Gamma];
        let steps = converge_both(&game, &Partition::singletons(n), seed, cap, &monitors, None)?;
        // the final lambda of a lexicographic run stays within n^2
        let o = run(&game, &Partition::singletons(n), &Policy::Lexicographic, &quiet(vec![MonitorRef::Lambda], cap + 1))
            .map_err(|e| e.to_string())?;
        let lambda = o.trace().last_readings.iter().find_map(|r| match r.value {
            ReadingValue::Int(v) if r.monitor == "lambda" => Some(v),
            _ => None,
        });
        ensure(lambda.unwrap_or(0) as usize <= n * n, || format!("seed {seed}: lambda {lambda:?} above n^2"))?;
        Ok(steps)
    })?;
    Ok(format!("200 games, n <= 40, within n^3+n^2 steps; longest {longest}"))
}

fn ahg_weak(_: &SearchBudget) -> Outcome {
    let longest = over_seeds(200, |seed| {
        let n = 2 + (seed as usize % 19);
        let game = random(RandomSpec::Ahg { strict: false, natural_sp: true }, n, seed).map_err(|e| e.to_string())?;
        converge_both(&game, &Partition::singletons(n), seed, 1_000_000, &[], None)
    })?;
    Ok(format!("200 games, n <= 20; longest {longest}"))
}

fn hdg_cycles(b: &SearchBudget) -> Outcome {
    let mut total = 0;
    for id in ["hdg12-no-sp", "hdg10-weak", "hdg26-sp-strict-solitary", "hdg239-sp-strict-singletons"] {
        total += all_claims(&catalog(id)?, b)?;
    }
    Ok(format!("4 constructions, {total} claims"))
}

fn hdg_forced(b: &SearchBudget) -> Outcome {
    for id in ["hdg10-forced-strict", "hdg10-forced-weak-sp"] {
        let inst = catalog(id)?;
        all_claims(&inst, b)?;
        claim(&inst, Claim::ForcedCycle { script: "cycle6".into(), start: "cycle".into() }, b)?;
        let start = inst.start("cycle").ok_or("missing start")?;
        let ans = all_paths_converge(&inst.game, start, b).map_err(|e| e.to_string())?;
        ensure(matches!(ans, ReachabilityAnswer::CycleReachable { .. }), || format!("{id}: {}", ans.label()))?;
    }
    Ok("both variants admit exactly one move per cycle state".into())
}

fn hdg_conv(_: &SearchBudget) -> Outcome {
    let longest = over_seeds(200, |seed| {
        let n = 2 + (seed as usize % 23);
        let game = random(RandomSpec::Hdg { strict: true, natural_sp: true, reds: None }, n, seed)
            .map_err(|e| e.to_string())?;
        let filter = Some(FilterKind::SolitaryHomogeneity);
        converge_both(&game, &Partition::singletons(n), seed, n.pow(5), &[], filter)
    })?;
    Ok(format!("200 games, n <= 24, within n^5 steps; longest {longest}"))
}

fn fhg15(b: &SearchBudget) -> Outcome {
    let inst = catalog("fhg15")?;
    let ans = exists_is_partition(&inst.game, Strategy::PrunedFHG, b).map_err(|e| e.to_string())?;
    let ExistenceAnswer::None { checked } = ans else {
        return Err(format!("expected no IS partition, got {ans:?}"));
    };
    all_claims(&inst, b)?;
    Ok(format!("{checked} pruned candidates, none IS"))
}

fn fhg_simple(b: &SearchBudget) -> Outcome {
    let longest = over_seeds(200, |seed| {
        let n = 2 + (seed as usize % 29);
        let game = random(RandomSpec::Fhg(FhgFamily::SimpleSymmetric), n, seed).map_err(|e| e.to_string())?;
        converge_both(&game, &Partition::singletons(n), seed, n * (n - 1) / 2, &[MonitorRef::Gamma], None)
    })?;
    let mut counts = Vec::new();
    for k in 3..=5 {
        let inst = fhg_clique(k).map_err(|e| e.to_string())?;
        all_claims(&inst, b)?;
        let len = inst.script("phase2").ok_or("missing phase2")?.len();
        ensure(len == (k - 1) * k * (k + 1) / 6, || format!("k={k}: {len} second-phase moves"))?;
        counts.push(len);
    }
    Ok(format!("200 games, longest {longest}; clique scripts k=3,4,5 take {counts:?} moves"))
}

fn fhg_acyclic(b: &SearchBudget) -> Outcome {
    let tri = catalog("fhg-triangle")?;
    let ans = all_paths_converge(&tri.game, &Partition::singletons(3), b).map_err(|e| e.to_string())?;
    ensure(matches!(ans, ReachabilityAnswer::CycleReachable { .. }), || format!("triangle: {}", ans.label()))?;
    let longest = over_seeds(500, |seed| {
        let n = 1 + (seed as usize % 20);
        let game = random(RandomSpec::Fhg(FhgFamily::Dag), n, seed).map_err(|e| e.to_string())?;
        converge_both(&game, &Partition::singletons(n), seed, n.pow(4), &[MonitorRef::Lex], None)
    })?;
    Ok(format!("triangle cycles; 500 acyclic games within n^4 steps, longest {longest}"))
}

fn dhg3(b: &SearchBudget) -> Outcome {
    let inst = catalog("dhg3")?;
    let s = Partition::singletons(3);
    let path = exists_path_to_is(&inst.game, &s, b).map_err(|e| e.to_string())?;
    ensure(matches!(path, ReachabilityAnswer::NoPath { .. }), || format!("path search: {}", path.label()))?;
    let conv = all_paths_converge(&inst.game, &s, b).map_err(|e| e.to_string())?;
    ensure(matches!(conv, ReachabilityAnswer::CycleReachable { .. }), || format!("convergence: {}", conv.label()))?;
    let stable: Vec<Partition> = enumerate_partitions(3)
        .map_err(|e| e.to_string())?
        .filter(|p| is_stable(&inst.game, p, StabilityKind::IS))
        .collect();
    ensure(stable == vec![Partition::grand(3)], || format!("IS partitions: {stable:?}"))?;
    Ok("no IS partition reachable from singletons; the grand coalition is the only IS partition".into())
}

fn dhg_symmetric(_: &SearchBudget) -> Outcome {
    let longest = over_seeds(300, |seed| {
        let n = 1 + (seed as usize % 12);
        let density = 0.1 + 0.2 * (seed % 5) as f64;
        let game = random(RandomSpec::Dhg { symmetric: true, density }, n, seed).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        converge_both(&game, &Partition::from_labels(&labels), seed, 1_000_000, &[], None)
    })?;
    Ok(format!("300 games from random starts; longest {longest}"))
}

fn formula(num_vars: usize, clauses: &[&[i64]]) -> SatFormula {
    let lit = |l: i64| if l > 0 { Lit::pos(l as usize - 1) } else { Lit::neg((-l) as usize - 1) };
    let clauses = clauses.iter().map(|c| c.iter().copied().map(lit).collect()).collect();
    SatFormula::new(num_vars, clauses).expect("well-formed")
}

fn reductions(b: &SearchBudget) -> Outcome {
    let toys = [
        formula(1, &[&[1]]),
        formula(1, &[&[1], &[-1]]),
        formula(2, &[&[1, 2], &[-1]]),
        formula(2, &[&[1, 2], &[-1, 2], &[-2]]),
        formula(3, &[&[1, -2], &[2, 3], &[-3]]),
        formula(3, &[&[1], &[2], &[-1, -2]]),
    ];
    for f in &toys {
        let inst = reduce(ReductionKind::SatDhgExists, &f.clone().into(), &ReductionParams::new())
            .map_err(|e| e.to_string())?;
        let start = inst.start("singletons").ok_or("missing start")?;
        let found = match exists_path_to_is(&inst.game, start, b).map_err(|e| e.to_string())? {
            ReachabilityAnswer::PathFound { .. } => true,
            ReachabilityAnswer::NoPath { .. } => false,
            other => return Err(format!("{}: {}", f.to_dimacs().trim(), other.label())),
        };
        let sat = f.brute_force_sat().is_some();
        ensure(found == sat, || format!("{}: path {found}, satisfiable {sat}", f.to_dimacs().trim()))?;
    }
    let b2 = formula(3, &[&[1, 2, 3], &[1, 2, 3], &[-1, -2, -3], &[-1, -2, -3]]);
    let a1 = reduce(ReductionKind::SatAhgExists, &b2.clone().into(), &ReductionParams::new())
        .map_err(|e| e.to_string())?;
    all_claims(&a1, b)?;
    let x = X3CInstance::new(6, vec![[0, 1, 2], [3, 4, 5], [0, 3, 4]]).map_err(|e| e.to_string())?;
    let mut built = 0;
    for kind in ReductionKind::ALL {
        let input: ReductionInput = if kind.takes_formula() { b2.clone().into() } else { x.clone().into() };
        match reduce(kind, &input, &ReductionParams::new()) {
            Ok(_) => built += 1,
            Err(InstanceError::Core(_)) => {}
            Err(e) => return Err(format!("{kind} defaults: {e}")),
        }
    }
    let params: ReductionParams = "alpha=10,beta_plus=20".parse().map_err(|e: InstanceError| e.to_string())?;
    ensure(
        matches!(reduce(ReductionKind::SatAhgExists, &b2.into(), &params), Err(InstanceError::ConstantInequalityViolation(_))),
        || "bad constants were accepted".into(),
    )?;
    Ok(format!("{} toy formulas match brute force; {built} of 11 generators build with defaults", toys.len()))
}

fn oracles(b: &SearchBudget) -> Outcome {
    let b = b.with_parallelism(1);
    over_seeds(100, |seed| {
        let n = 1 + (seed as usize % 8);
        let g = random(RandomSpec::Ahg { strict: seed % 2 == 0, natural_sp: seed % 3 == 0 }, n, seed)
            .map_err(|e| e.to_string())?;
        agree(&g, Strategy::TypeReduced, &b, seed)?;
        let n = 1 + (seed as usize % 7);
        let family = if seed % 2 == 0 { FhgFamily::Symmetric } else { FhgFamily::SymmetricNonnegative };
        let g = random(RandomSpec::Fhg(family), n, seed).map_err(|e| e.to_string())?;
        agree(&g, Strategy::PrunedFHG, &b, seed)?;
        Ok(0)
    })?;
    Ok("100 anonymous and 100 symmetric fractional games agree".into())
}

fn agree(g: &HedonicGame, s: Strategy, b: &SearchBudget, seed: u64) -> Result<(), String> {
    let plain = exists_is_partition(g, Strategy::Plain, b).map_err(|e| e.to_string())?;
    let other = exists_is_partition(g, s, b).map_err(|e| e.to_string())?;
    for a in [&plain, &other] {
        ensure(!matches!(a, ExistenceAnswer::BudgetExhausted { .. }), || format!("seed {seed}: budget exhausted"))?;
        if let Some(w) = a.witness() {
            ensure(is_stable(g, w, StabilityKind::IS), || format!("seed {seed}: witness {w} is not IS"))?;
        }
    }
    ensure(plain.witness().is_some() == other.witness().is_some(), || format!("seed {seed} {s:?}: answers differ"))
}
