use std::collections::HashMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{
    apply, check_deviation, enumerate_deviations, first_deviation, CanonicalForm,
    DeviationMove, Partition, StabilityKind, TargetRef,
};
use crate::games::{Color, DiversityGame, HedonicGame, Rational};
use crate::potentials::{build_monitor, Monitor, MonitorReading, MonitorRef};

use super::DynamicsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterKind {
    /// A move into a coalition that would stay homogeneous is only allowed
    /// as a move to a new singleton.
    SolitaryHomogeneity,
}

/// How the next deviation is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// First admissible move in enumeration order.
    Lexicographic,
    /// `ChaCha8Rng::seed_from_u64(seed)`; each step draws one `next_u64()`
    /// and takes the candidate at index `draw % count`.
    SeededRandom(u64),
    /// Exactly these moves; each must be admissible when reached.
    Scripted(Vec<DeviationMove>),
    Filtered(Box<Policy>, FilterKind),
}

impl Policy {
    pub fn filtered(self, f: FilterKind) -> Self {
        Policy::Filtered(Box::new(self), f)
    }

    fn split(&self) -> (&Policy, Vec<FilterKind>) {
        let mut filters = Vec::new();
        let mut p = self;
        while let Policy::Filtered(inner, f) = p {
            filters.push(*f);
            p = inner;
        }
        (p, filters)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub max_steps: usize,
    pub detect_cycles: bool,
    pub monitors: Vec<MonitorRef>,
    /// Keep every intermediate partition in the trace.
    pub record_trace: bool,
    pub kind: StabilityKind,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_steps: 1_000_000,
            detect_cycles: true,
            monitors: Vec::new(),
            record_trace: true,
            kind: StabilityKind::IS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: DeviationMove,
    pub result: Partition,
    pub readings: Vec<MonitorReading>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub start: Partition,
    pub start_readings: Vec<MonitorReading>,
    /// Empty when the run was configured not to record.
    pub steps: Vec<TraceStep>,
    /// Monitor violations as (step index, message); step 0 is the start.
    pub violations: Vec<(usize, String)>,
    /// Most recent reading of each monitor.
    pub last_readings: Vec<MonitorReading>,
}

impl Trace {
    fn new(start: Partition) -> Self {
        Trace { start, start_readings: Vec::new(), steps: Vec::new(), violations: Vec::new(), last_readings: Vec::new() }
    }

    /// Partition after `k` steps (0 = start), if recorded.
    pub fn state(&self, k: usize) -> Option<&Partition> {
        if k == 0 {
            Some(&self.start)
        } else {
            self.steps.get(k - 1).map(|s| &s.result)
        }
    }

    pub fn moves(&self) -> Vec<DeviationMove> {
        self.steps.iter().map(|s| s.mv.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    Converged { final_partition: Partition, steps: usize, trace: Trace },
    /// The state after `prefix_len` steps reappears after `prefix_len + cycle_len`.
    CycleDetected { prefix_len: usize, cycle_len: usize, trace: Trace },
    StepLimitReached { steps: usize, trace: Trace },
}

impl RunOutcome {
    pub fn trace(&self) -> &Trace {
        match self {
            RunOutcome::Converged { trace, .. }
            | RunOutcome::CycleDetected { trace, .. }
            | RunOutcome::StepLimitReached { trace, .. } => trace,
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            RunOutcome::Converged { steps, .. } | RunOutcome::StepLimitReached { steps, .. } => *steps,
            RunOutcome::CycleDetected { prefix_len, cycle_len, .. } => prefix_len + cycle_len,
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, RunOutcome::Converged { .. })
    }
}

pub(crate) fn passes(filters: &[FilterKind], hdg: Option<&DiversityGame>, mv: &DeviationMove) -> bool {
    filters.iter().all(|f| match f {
        FilterKind::SolitaryHomogeneity => match (&mv.target, hdg) {
            (TargetRef::NewSingleton, _) => true,
            (TargetRef::ExistingCoalition(t), Some(g)) => {
                let c = g.color(mv.agent);
                t.members().iter().any(|&a| g.color(a) != c)
            }
            (TargetRef::ExistingCoalition(_), None) => false,
        },
    })
}

/// Coalition shapes allowed under the solitary-homogeneity dynamics of a
/// strict naturally single-peaked diversity game started from singletons:
/// singletons, or exactly one agent of one color with agents of the other.
fn claim_shape_violation(g: &DiversityGame, p: &Partition) -> Option<String> {
    p.coalitions().iter().find_map(|c| {
        if c.len() == 1 {
            return None;
        }
        let reds = c.members().iter().filter(|&&a| g.color(a) == Color::Red).count();
        let blues = c.len() - reds;
        let ok = (reds == 1 && blues >= 1) || (blues == 1 && reds >= 1);
        (!ok).then(|| format!("coalition {c} has {reds} red and {blues} blue agents"))
    })
}

/// Runs deviation dynamics from `start` until stability, a repeated state,
/// or the step limit.
pub fn run(game: &HedonicGame, start: &Partition, policy: &Policy, config: &RunConfig) -> Result<RunOutcome, DynamicsError> {
    if start.n() != game.n() {
        return Err(DynamicsError::SizeMismatch { game: game.n(), partition: start.n() });
    }
    let (base, filters) = policy.split();
    let hdg = game.as_diversity();
    if !filters.is_empty() && hdg.is_none() {
        return Err(DynamicsError::FilterNeedsDiversityGame);
    }
    let check_shapes = match hdg {
        Some(g) => filters.contains(&FilterKind::SolitaryHomogeneity)
            && start.is_singletons()
            && g.is_strict()
            && g.is_natural_sp(),
        None => false,
    };
    // simple symmetric FHG from singletons only ever forms cliques
    let check_cliques = match game.as_fractional() {
        Some(g) => start.is_singletons() && {
            let c = g.classify();
            c.symmetric && c.simple
        },
        None => false,
    };
    let mut monitors: Vec<Box<dyn Monitor + '_>> =
        config.monitors.iter().map(|&m| build_monitor(m, game)).collect::<Result<_, _>>()?;
    let mut rng = match base {
        Policy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let script: &[DeviationMove] = match base {
        Policy::Scripted(s) => s,
        _ => &[],
    };

    let mut trace = Trace::new(start.clone());
    trace.start_readings = monitors.iter_mut().map(|m| m.start(start)).collect();
    for r in &trace.start_readings {
        trace.violations.extend(r.violations.iter().map(|v| (0, format!("{}: {v}", r.monitor))));
    }
    trace.last_readings = trace.start_readings.clone();
    let mut visited: HashMap<CanonicalForm, usize> = HashMap::new();
    if config.detect_cycles {
        visited.insert(start.canonical(), 0);
    }
    let mut state = start.clone();
    let mut step = 0usize;
    loop {
        // choose the next move
        let chosen: Option<DeviationMove> = match base {
            Policy::Scripted(_) => {
                let Some(mv) = script.get(step) else {
                    if first_deviation(game, &state, config.kind).is_none() {
                        return Ok(RunOutcome::Converged { final_partition: state, steps: step, trace });
                    }
                    return Ok(RunOutcome::StepLimitReached { steps: step, trace });
                };
                let check = check_deviation(game, &state, mv, config.kind)
                    .map_err(|e| DynamicsError::ScriptedMoveInvalid { step, reason: e.to_string() })?;
                if !check.is_valid() {
                    return Err(DynamicsError::ScriptedMoveInvalid { step, reason: check.to_string() });
                }
                if !passes(&filters, hdg, mv) {
                    return Err(DynamicsError::ScriptedMoveInvalid { step, reason: "rejected by filter".into() });
                }
                Some(mv.clone())
            }
            _ if filters.is_empty() && rng.is_none() => first_deviation(game, &state, config.kind),
            _ => {
                let all = enumerate_deviations(game, &state, config.kind);
                if all.is_empty() {
                    None
                } else {
                    let admissible: Vec<DeviationMove> =
                        all.into_iter().filter(|m| passes(&filters, hdg, m)).collect();
                    if admissible.is_empty() {
                        return Err(DynamicsError::FilterStarvation { step });
                    }
                    match rng.as_mut() {
                        Some(r) => {
                            let k = (r.next_u64() % admissible.len() as u64) as usize;
                            Some(admissible[k].clone())
                        }
                        None => admissible.into_iter().next(),
                    }
                }
            }
        };
        let Some(mv) = chosen else {
            return Ok(RunOutcome::Converged { final_partition: state, steps: step, trace });
        };
        if step >= config.max_steps {
            return Ok(RunOutcome::StepLimitReached { steps: step, trace });
        }
        let next = apply(&state, &mv)?;
        step += 1;
        let readings: Vec<MonitorReading> = monitors.iter_mut().map(|m| m.observe(&state, &mv, &next)).collect();
        for r in &readings {
            trace.violations.extend(r.violations.iter().map(|v| (step, format!("{}: {v}", r.monitor))));
        }
        if check_shapes {
            if let Some(detail) = claim_shape_violation(hdg.expect("checked"), &next) {
                return Err(DynamicsError::InvariantViolated { step, detail });
            }
        }
        if check_cliques {
            if let (Some(g), TargetRef::ExistingCoalition(t)) = (game.as_fractional(), &mv.target) {
                if let Some(&x) = t.members().iter().find(|&&x| g.weight(mv.agent, x) != Rational::one()) {
                    let detail = format!("agent {} joined {t} without an edge to {x}", mv.agent);
                    return Err(DynamicsError::InvariantViolated { step, detail });
                }
            }
        }
        trace.last_readings.clone_from(&readings);
        if config.record_trace {
            trace.steps.push(TraceStep { mv, result: next.clone(), readings });
        }
        if config.detect_cycles {
            let key = next.canonical();
            if let Some(&k) = visited.get(&key) {
                return Ok(RunOutcome::CycleDetected { prefix_len: k, cycle_len: step - k, trace });
            }
            visited.insert(key, step);
        }
        state = next;
    }
}

/// Applies `moves` in order, validating each as an IS deviation.
pub fn replay(game: &HedonicGame, start: &Partition, moves: &[DeviationMove]) -> Result<Trace, DynamicsError> {
    if start.n() != game.n() {
        return Err(DynamicsError::SizeMismatch { game: game.n(), partition: start.n() });
    }
    let mut trace = Trace::new(start.clone());
    let mut state = start.clone();
    for (step, mv) in moves.iter().enumerate() {
        let check = check_deviation(game, &state, mv, StabilityKind::IS)
            .map_err(|e| DynamicsError::ScriptedMoveInvalid { step, reason: e.to_string() })?;
        if !check.is_valid() {
            return Err(DynamicsError::ScriptedMoveInvalid { step, reason: format!("{mv}: {check}") });
        }
        let next = apply(&state, mv)?;
        trace.steps.push(TraceStep { mv: mv.clone(), result: next.clone(), readings: Vec::new() });
        state = next;
    }
    Ok(trace)
}

/// Final partition of a replay, without keeping intermediate states.
pub fn replay_final(game: &HedonicGame, start: &Partition, moves: &[DeviationMove]) -> Result<Partition, DynamicsError> {
    let mut state = start.clone();
    for (step, mv) in moves.iter().enumerate() {
        let check = check_deviation(game, &state, mv, StabilityKind::IS)
            .map_err(|e| DynamicsError::ScriptedMoveInvalid { step, reason: e.to_string() })?;
        if !check.is_valid() {
            return Err(DynamicsError::ScriptedMoveInvalid { step, reason: format!("{mv}: {check}") });
        }
        state = apply(&state, mv)?;
    }
    Ok(state)
}

/// Independent re-validation of a trace using only core predicates.
pub fn validate_trace(game: &HedonicGame, trace: &Trace) -> Result<(), DynamicsError> {
    let mut state = trace.start.clone();
    for (step, s) in trace.steps.iter().enumerate() {
        let ok = crate::core::is_deviation_of_kind(game, &state, &s.mv, StabilityKind::IS)
            .map_err(|e| DynamicsError::ScriptedMoveInvalid { step, reason: e.to_string() })?;
        if !ok {
            return Err(DynamicsError::ScriptedMoveInvalid { step, reason: "not an IS deviation".into() });
        }
        let next = apply(&state, &s.mv)?;
        if next != s.result {
            return Err(DynamicsError::ScriptedMoveInvalid { step, reason: "recorded result differs".into() });
        }
        state = next;
    }
    Ok(())
}

/// Maps `f` over `items`, in parallel with the `parallel` feature; output
/// order matches input order either way.
pub fn run_batch<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    crate::par::map(items, f)
}
