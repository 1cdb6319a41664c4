use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hedonic::core::{enumerate_deviations, is_stable, Partition, StabilityKind};
use hedonic::dynamics::{run, FilterKind, Policy, RunConfig, RunOutcome};
use hedonic::instances::{
    build, catalog_ids, random, reduce, FhgFamily, NamedInstance, RandomSpec, ReductionInput, ReductionKind,
    ReductionParams, SatFormula, X3CInstance,
};
use hedonic::potentials::MonitorRef;
use hedonic::search::{
    all_paths_converge, exists_is_partition, exists_path_to_is, ExistenceAnswer, ReachabilityAnswer, SearchBudget,
    Strategy,
};
use hedonic_cli::format::move_doc;
use hedonic_cli::scenarios::{lookup, scenarios};
use hedonic_cli::trace::{reading_doc, OutcomeDoc};
use hedonic_cli::{InstanceFile, TraceFile};
use serde_json::json;

/// IS deviation dynamics, stability checks and exhaustive search for
/// hedonic games.
#[derive(Parser)]
#[command(name = "hedonic", version)]
struct Cli {
    /// Print one JSON document instead of the human-readable report.
    #[arg(long, global = true)]
    json_style: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report whether a partition is stable and list the admissible moves.
    Check(CheckArgs),
    /// Run deviation dynamics from a start partition.
    Run(RunArgs),
    /// Decide existence, reachability or convergence by exhaustive search.
    Search(SearchArgs),
    /// Write an instance file: bundled, reduction gadget or random.
    Gen(GenArgs),
    /// Re-derive published results and report pass or fail per scenario.
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct BudgetArgs {
    /// Search time limit in seconds.
    #[arg(long = "budget", env = "HD_BUDGET_SECONDS", default_value_t = 600)]
    seconds: u64,
    /// Cap on visited partitions or stored states.
    #[arg(long, default_value_t = 50_000_000)]
    max_states: u64,
    /// Worker threads (defaults to the available cores).
    #[arg(long)]
    workers: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget> {
        let mut b = SearchBudget::default().with_seconds(self.seconds).with_states(self.max_states);
        if let Some(w) = self.workers {
            b = b.with_parallelism(w);
        }
        b.validate()?;
        Ok(b)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Nash,
    Is,
    Cis,
}

impl From<KindArg> for StabilityKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Nash => StabilityKind::Nash,
            KindArg::Is => StabilityKind::IS,
            KindArg::Cis => StabilityKind::CIS,
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").args(["partition", "inline"])))]
struct CheckArgs {
    /// Instance file, or a bundled id such as `ahg7`.
    instance: String,
    /// Named start partition of the instance (`singletons` and `grand` always exist).
    #[arg(long)]
    partition: Option<String>,
    /// Partition as JSON, e.g. `[[0,1],[2]]`.
    #[arg(long)]
    inline: Option<String>,
    #[arg(long, value_enum, default_value = "is")]
    kind: KindArg,
    /// Also re-validate this trace file against the instance.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    SolitaryHomogeneity,
}

#[derive(Args)]
struct RunArgs {
    /// Instance file, or a bundled id.
    instance: String,
    #[arg(long, default_value = "singletons")]
    start: String,
    /// `lex`, `random:SEED` or `script:NAME`.
    #[arg(long, default_value = "lex")]
    policy: String,
    #[arg(long, value_enum)]
    filter: Option<FilterArg>,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: usize,
    /// Comma-separated monitors: gamma, lambda, lex, lambda-r.
    #[arg(long, value_delimiter = ',')]
    monitors: Vec<String>,
    /// Write the full trace here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ExistsIs,
    ExistsPath,
    Converges,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Plain,
    TypeReduced,
    PrunedFhg,
}

#[derive(Args)]
struct SearchArgs {
    /// Instance file, or a bundled id.
    instance: String,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Start partition for `exists-path` and `converges`.
    #[arg(long, default_value = "singletons")]
    start: String,
    /// Enumeration strategy for `exists-is`.
    #[arg(long, value_enum, default_value = "plain")]
    strategy: StrategyArg,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Ahg,
    Hdg,
    Fhg,
    Dhg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    SimpleSymmetric,
    Dag,
    SymmetricNonnegative,
    Symmetric,
    General,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["paper", "reduce", "random", "list"])))]
struct GenArgs {
    /// Bundled instance id, e.g. `fhg15` or `fhg-clique(4)`.
    #[arg(long)]
    paper: Option<String>,
    /// Reduction kind, e.g. `sat->dhg-exists`.
    #[arg(long, requires = "input")]
    reduce: Option<String>,
    /// DIMACS CNF for SAT reductions, exact-cover text otherwise.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Constant overrides, e.g. `alpha=27,beta2=10966`.
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long, value_enum, requires = "n")]
    random: Option<RandomKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// ahg, hdg: strict orders.
    #[arg(long)]
    strict: bool,
    /// ahg, hdg: single-peaked on the natural axis.
    #[arg(long)]
    natural_sp: bool,
    /// hdg: number of red agents.
    #[arg(long)]
    reds: Option<usize>,
    #[arg(long, value_enum, default_value = "general")]
    family: FamilyArg,
    /// dhg: approval density in [0, 1].
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// dhg: symmetric approvals.
    #[arg(long)]
    symmetric: bool,
    /// List bundled ids and reduction kinds.
    #[arg(long)]
    list: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Scenario id, bundled instance id, or `all`.
    #[arg(long, default_value = "all")]
    scenario: String,
    #[command(flatten)]
    budget: BudgetArgs,
}

/// Exit status: 0 success, 1 a checked claim failed, 2 usage or input error.
enum Status {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let r = match &cli.cmd {
        Cmd::Check(a) => check(a, cli.json_style),
        Cmd::Run(a) => run_cmd(a, cli.json_style),
        Cmd::Search(a) => search(a, cli.json_style),
        Cmd::Gen(a) => gen(a, cli.json_style),
        Cmd::VerifyPaper(a) => verify(a, cli.json_style),
    };
    match r {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// A path that exists is read as an instance file; anything else must be a
/// bundled id.
fn load(arg: &str) -> Result<NamedInstance> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let doc = InstanceFile::parse(&text).with_context(|| format!("parsing {arg}"))?;
        return doc.to_instance().with_context(|| format!("loading {arg}"));
    }
    build(arg).map_err(|e| anyhow!("{arg} is neither a file nor a bundled id ({e})"))
}

fn start(inst: &NamedInstance, name: &str) -> Result<Partition> {
    if let Some(p) = inst.start(name) {
        return Ok(p.clone());
    }
    match name {
        "singletons" => Ok(Partition::singletons(inst.game.n())),
        "grand" => Ok(Partition::grand(inst.game.n())),
        _ => {
            let known: Vec<&str> = inst.starts.iter().map(|(k, _)| k.as_str()).collect();
            bail!("no start partition {name:?}; the instance has {known:?} plus singletons and grand")
        }
    }
}

fn emit(json_style: bool, doc: serde_json::Value, human: impl FnOnce() -> String) {
    if json_style {
        println!("{}", serde_json::to_string_pretty(&doc).expect("values serialize"));
    } else {
        print!("{}", human());
    }
}

fn kind_name(k: StabilityKind) -> &'static str {
    match k {
        StabilityKind::Nash => "nash",
        StabilityKind::IS => "is",
        StabilityKind::CIS => "cis",
    }
}

fn check(a: &CheckArgs, json_style: bool) -> Result<Status> {
    let inst = load(&a.instance)?;
    let n = inst.game.n();
    let p = match &a.inline {
        Some(text) => {
            let groups: Vec<Vec<usize>> = serde_json::from_str(text).context("--inline expects [[0,1],[2]]")?;
            Partition::new(n, groups)?
        }
        None => start(&inst, a.partition.as_deref().unwrap_or("singletons"))?,
    };
    let kind = StabilityKind::from(a.kind);
    let moves = enumerate_deviations(&inst.game, &p, kind);
    let stable = moves.is_empty();
    debug_assert_eq!(stable, is_stable(&inst.game, &p, kind));
    let trace = match &a.trace {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let t = TraceFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
            Some(t.validate(&inst.game).map(|()| t.steps.len()))
        }
        None => None,
    };
    let doc = json!({
        "partition": p.to_vecs(),
        "kind": kind_name(kind),
        "stable": stable,
        "moves": moves.iter().map(move_doc).collect::<Vec<_>>(),
        "trace": trace.as_ref().map(|r| match r {
            Ok(steps) => json!({"valid": true, "steps": steps}),
            Err(e) => json!({"valid": false, "error": e}),
        }),
    });
    emit(json_style, doc, || {
        let mut s = format!("partition {p}: ");
        if stable {
            s += &format!("{kind:?} stable\n");
        } else {
            s += &format!("not {kind:?} stable, {} admissible moves\n", moves.len());
            for m in &moves {
                s += &format!("  {m}\n");
            }
        }
        match &trace {
            Some(Ok(steps)) => s += &format!("trace valid: {steps} steps\n"),
            Some(Err(e)) => s += &format!("trace invalid: {e}\n"),
            None => {}
        }
        s
    });
    Ok(if matches!(trace, Some(Err(_))) { Status::Fail } else { Status::Pass })
}

fn policy(inst: &NamedInstance, text: &str) -> Result<Policy> {
    if text == "lex" {
        return Ok(Policy::Lexicographic);
    }
    if let Some(seed) = text.strip_prefix("random:") {
        return Ok(Policy::SeededRandom(seed.parse().with_context(|| format!("bad seed {seed:?}"))?));
    }
    if let Some(name) = text.strip_prefix("script:") {
        let moves = inst.script(name).ok_or_else(|| {
            let known: Vec<&str> = inst.scripts.iter().map(|(k, _)| k.as_str()).collect();
            anyhow!("no script {name:?}; the instance has {known:?}")
        })?;
        return Ok(Policy::Scripted(moves.to_vec()));
    }
    bail!("policy must be lex, random:SEED or script:NAME, got {text:?}")
}

fn run_cmd(a: &RunArgs, json_style: bool) -> Result<Status> {
    let inst = load(&a.instance)?;
    let from = start(&inst, &a.start)?;
    let mut pol = policy(&inst, &a.policy)?;
    if let Some(FilterArg::SolitaryHomogeneity) = a.filter {
        pol = pol.filtered(FilterKind::SolitaryHomogeneity);
    }
    let monitors = a.monitors.iter().map(|m| m.parse::<MonitorRef>()).collect::<Result<Vec<_>, _>>()?;
    let cfg = RunConfig { max_steps: a.max_steps, monitors, ..RunConfig::default() };
    let out = run(&inst.game, &from, &pol, &cfg)?;
    let t = out.trace();
    if let Some(path) = &a.out {
        let id = (!inst.id.is_empty()).then_some(inst.id.as_str());
        let doc = TraceFile::from_outcome(&out, id, Some(&a.policy));
        fs::write(path, doc.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    let last = t.state(out.steps()).cloned().unwrap_or_else(|| t.start.clone());
    let doc = json!({
        "outcome": OutcomeDoc::of(&out),
        "final": last.to_vecs(),
        "readings": t.last_readings.iter().map(reading_doc).collect::<Vec<_>>(),
        "violations": t.violations.iter().map(|(k, v)| json!({"step": k, "message": v})).collect::<Vec<_>>(),
    });
    emit(json_style, doc, || {
        let mut s = match &out {
            RunOutcome::Converged { steps, .. } => format!("converged after {steps} steps\n"),
            RunOutcome::CycleDetected { prefix_len, cycle_len, .. } => {
                format!("cycle detected: state {prefix_len} recurs after {cycle_len} steps (cycle_len={cycle_len})\n")
            }
            RunOutcome::StepLimitReached { steps, .. } => format!("step limit reached after {steps} steps\n"),
        };
        s += &format!("final partition {last}\n");
        for r in &t.last_readings {
            s += &format!("  {} = {}\n", r.monitor, r.value);
        }
        for (k, v) in &t.violations {
            s += &format!("  violation at step {k}: {v}\n");
        }
        s
    });
    Ok(if t.violations.is_empty() { Status::Pass } else { Status::Fail })
}

fn search(a: &SearchArgs, json_style: bool) -> Result<Status> {
    let inst = load(&a.instance)?;
    let budget = a.budget.budget()?;
    let (doc, human) = match a.mode {
        ModeArg::ExistsIs => {
            let strategy = match a.strategy {
                StrategyArg::Plain => Strategy::Plain,
                StrategyArg::TypeReduced => Strategy::TypeReduced,
                StrategyArg::PrunedFhg => Strategy::PrunedFHG,
            };
            match exists_is_partition(&inst.game, strategy, &budget)? {
                ExistenceAnswer::Exists(w) => {
                    (json!({"answer": "exists", "witness": w.to_vecs()}), format!("IS partition exists: {w}\n"))
                }
                ExistenceAnswer::None { checked } => (
                    json!({"answer": "none", "checked": checked}),
                    format!("no IS partition ({checked} candidates checked)\n"),
                ),
                ExistenceAnswer::BudgetExhausted { checked } => (
                    json!({"answer": "budget-exhausted", "checked": checked}),
                    format!("undecided: budget exhausted after {checked} candidates\n"),
                ),
            }
        }
        ModeArg::ExistsPath | ModeArg::Converges => {
            let from = start(&inst, &a.start)?;
            let ans = match a.mode {
                ModeArg::ExistsPath => exists_path_to_is(&inst.game, &from, &budget)?,
                _ => all_paths_converge(&inst.game, &from, &budget)?,
            };
            reach_report(&ans)
        }
    };
    emit(json_style, doc, || human);
    Ok(Status::Pass)
}

fn reach_report(ans: &ReachabilityAnswer) -> (serde_json::Value, String) {
    let moves = |ms: &[hedonic::core::DeviationMove]| ms.iter().map(move_doc).collect::<Vec<_>>();
    let list = |ms: &[hedonic::core::DeviationMove]| ms.iter().map(|m| format!("  {m}\n")).collect::<String>();
    let label = ans.label();
    match ans {
        ReachabilityAnswer::PathFound { moves: ms, end } => (
            json!({"answer": label, "moves": moves(ms), "end": end.to_vecs()}),
            format!("path of {} moves to the IS partition {end}\n{}", ms.len(), list(ms)),
        ),
        ReachabilityAnswer::CycleReachable { prefix, cycle } => (
            json!({"answer": label, "prefix": moves(prefix), "cycle": moves(cycle)}),
            format!("cycle reachable: {} moves into a {}-move cycle\n{}--\n{}", prefix.len(), cycle.len(), list(prefix), list(cycle)),
        ),
        ReachabilityAnswer::NoPath { explored } => (
            json!({"answer": label, "explored": explored}),
            format!("no IS partition reachable ({explored} states explored)\n"),
        ),
        ReachabilityAnswer::ConvergesAlways { explored } => (
            json!({"answer": label, "explored": explored}),
            format!("every IS sequence converges ({explored} states explored)\n"),
        ),
        ReachabilityAnswer::BudgetExhausted { explored } => (
            json!({"answer": label, "explored": explored}),
            format!("undecided: budget exhausted after {explored} states\n"),
        ),
    }
}

fn gen(a: &GenArgs, json_style: bool) -> Result<Status> {
    if a.list {
        let kinds: Vec<&str> = ReductionKind::ALL.iter().map(|k| k.name()).collect();
        let doc = json!({"paper": catalog_ids(), "reduce": kinds, "random": ["ahg", "hdg", "fhg", "dhg"]});
        emit(json_style, doc, || {
            let mut s = String::from("bundled ids:\n");
            for id in catalog_ids() {
                s += &format!("  {id}\n");
            }
            s += "  fhg-clique(k)\nreduction kinds:\n";
            for k in ReductionKind::ALL {
                s += &format!("  {:<22} params: {}\n", k.name(), k.params().join(", "));
            }
            s
        });
        return Ok(Status::Pass);
    }
    let inst = if let Some(id) = &a.paper {
        build(id)?
    } else if let Some(kind) = &a.reduce {
        let kind: ReductionKind = kind.parse()?;
        let path = a.input.as_ref().expect("clap enforces --input");
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let input: ReductionInput = if kind.takes_formula() {
            SatFormula::parse_dimacs(&text)?.into()
        } else {
            X3CInstance::parse(&text)?.into()
        };
        let params: ReductionParams = a.params.parse()?;
        reduce(kind, &input, &params)?
    } else if let Some(kind) = a.random {
        let n = a.n.expect("clap enforces --n");
        let spec = match kind {
            RandomKind::Ahg => RandomSpec::Ahg { strict: a.strict, natural_sp: a.natural_sp },
            RandomKind::Hdg => RandomSpec::Hdg { strict: a.strict, natural_sp: a.natural_sp, reds: a.reds },
            RandomKind::Fhg => RandomSpec::Fhg(match a.family {
                FamilyArg::SimpleSymmetric => FhgFamily::SimpleSymmetric,
                FamilyArg::Dag => FhgFamily::Dag,
                FamilyArg::SymmetricNonnegative => FhgFamily::SymmetricNonnegative,
                FamilyArg::Symmetric => FhgFamily::Symmetric,
                FamilyArg::General => FhgFamily::General,
            }),
            RandomKind::Dhg => RandomSpec::Dhg { symmetric: a.symmetric, density: a.density },
        };
        let game = random(spec, n, a.seed)?;
        let mut inst = NamedInstance::new(format!("random-{}-n{n}-s{}", game.kind(), a.seed), game);
        inst.starts.push(("singletons".into(), Partition::singletons(n)));
        inst
    } else {
        unreachable!("clap requires one source")
    };
    let doc = InstanceFile::from_instance(&inst);
    let text = doc.to_json();
    match &a.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            let summary = json!({"path": path, "id": inst.id, "kind": doc.game.kind, "n": doc.game.n});
            emit(json_style, summary, || {
                format!("wrote {}: {} game {} with {} agents\n", path.display(), doc.game.kind, inst.id, doc.game.n)
            });
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(Status::Pass)
}

fn verify(a: &VerifyArgs, json_style: bool) -> Result<Status> {
    let budget = a.budget.budget()?;
    let list = if a.scenario == "all" {
        scenarios()
    } else {
        let s = lookup(&a.scenario).ok_or_else(|| {
            let ids: Vec<String> = scenarios().into_iter().map(|s| s.id).collect();
            anyhow!("unknown scenario {:?}; known: all, {}, or a bundled instance id", a.scenario, ids.join(", "))
        })?;
        vec![s]
    };
    let mut results = Vec::new();
    for s in &list {
        let r = s.run(&budget);
        if !json_style {
            match &r {
                Ok(d) => println!("{}: PASS: {}; {d}", s.id, s.claim),
                Err(d) => println!("{}: FAIL: {}; {d}", s.id, s.claim),
            }
        }
        results.push((s, r));
    }
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    if json_style {
        let docs: Vec<_> = results
            .iter()
            .map(|(s, r)| {
                let (pass, detail) = match r {
                    Ok(d) => (true, d),
                    Err(d) => (false, d),
                };
                json!({"scenario": s.id, "claim": s.claim, "pass": pass, "detail": detail})
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"results": docs, "failed": failed}))?);
    } else if list.len() > 1 {
        println!("{} of {} scenarios pass", list.len() - failed, list.len());
    }
    Ok(if failed == 0 { Status::Pass } else { Status::Fail })
}
