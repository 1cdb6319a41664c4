//! Trace files: the start partition, every step with its resulting
//! partition and monitor readings, and the outcome.

use hedonic::core::{is_stable, Partition, StabilityKind};
use hedonic::dynamics::{validate_trace, RunOutcome, Trace, TraceStep};
use hedonic::games::HedonicGame;
use hedonic::potentials::{MonitorReading, ReadingValue};
use serde::{Deserialize, Serialize};

use crate::format::{move_doc, to_move, FormatError, TargetDoc, FORMAT_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Int(i64),
    Ints(Vec<i64>),
    Pair(Vec<i64>, Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadingDoc {
    pub monitor: String,
    pub value: ValueDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub agent: usize,
    pub target: TargetDoc,
    pub partition: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub readings: Vec<ReadingDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OutcomeDoc {
    Converged { steps: usize },
    CycleDetected { prefix_len: usize, cycle_len: usize },
    StepLimitReached { steps: usize },
}

impl OutcomeDoc {
    pub fn of(o: &RunOutcome) -> Self {
        match o {
            RunOutcome::Converged { steps, .. } => OutcomeDoc::Converged { steps: *steps },
            RunOutcome::CycleDetected { prefix_len, cycle_len, .. } => {
                OutcomeDoc::CycleDetected { prefix_len: *prefix_len, cycle_len: *cycle_len }
            }
            RunOutcome::StepLimitReached { steps, .. } => OutcomeDoc::StepLimitReached { steps: *steps },
        }
    }

    pub fn steps(self) -> usize {
        match self {
            OutcomeDoc::Converged { steps } | OutcomeDoc::StepLimitReached { steps } => steps,
            OutcomeDoc::CycleDetected { prefix_len, cycle_len } => prefix_len + cycle_len,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<String>,
    pub start: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub start_readings: Vec<ReadingDoc>,
    pub steps: Vec<StepDoc>,
    pub outcome: OutcomeDoc,
}

pub fn reading_doc(r: &MonitorReading) -> ReadingDoc {
    let value = match &r.value {
        ReadingValue::Int(v) => ValueDoc::Int(*v),
        ReadingValue::Ints(v) => ValueDoc::Ints(v.clone()),
        ReadingValue::Pair(a, b) => ValueDoc::Pair(a.clone(), b.clone()),
    };
    ReadingDoc { monitor: r.monitor.clone(), value, violations: r.violations.clone() }
}

fn reading(d: &ReadingDoc) -> MonitorReading {
    let value = match &d.value {
        ValueDoc::Int(v) => ReadingValue::Int(*v),
        ValueDoc::Ints(v) => ReadingValue::Ints(v.clone()),
        ValueDoc::Pair(a, b) => ReadingValue::Pair(a.clone(), b.clone()),
    };
    MonitorReading::new(&d.monitor, value, d.violations.clone())
}

impl TraceFile {
    pub fn from_outcome(o: &RunOutcome, instance: Option<&str>, policy: Option<&str>) -> Self {
        let t = o.trace();
        TraceFile {
            format_version: FORMAT_VERSION,
            instance: instance.map(str::to_string),
            policy: policy.map(str::to_string),
            start: t.start.to_vecs(),
            start_readings: t.start_readings.iter().map(reading_doc).collect(),
            steps: t
                .steps
                .iter()
                .map(|s| {
                    let m = move_doc(&s.mv);
                    StepDoc {
                        agent: m.agent,
                        target: m.target,
                        partition: s.result.to_vecs(),
                        readings: s.readings.iter().map(reading_doc).collect(),
                    }
                })
                .collect(),
            outcome: OutcomeDoc::of(o),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let doc: TraceFile = serde_json::from_str(text).map_err(FormatError::from_json)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(FormatError::Version(doc.format_version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("traces always serialize");
        s.push('\n');
        s
    }

    /// Rebuilds the trace for a game with `n` agents.
    pub fn to_trace(&self, n: usize) -> Result<Trace, FormatError> {
        let start = Partition::new(n, self.start.clone())?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (k, s) in self.steps.iter().enumerate() {
            let mv = to_move(&crate::format::MoveDoc { agent: s.agent, target: s.target.clone() }, n)
                .map_err(|e| FormatError::Invalid(format!("step {k}: {e}")))?;
            let result =
                Partition::new(n, s.partition.clone()).map_err(|e| FormatError::Invalid(format!("step {k}: {e}")))?;
            steps.push(TraceStep { mv, result, readings: s.readings.iter().map(reading).collect() });
        }
        let last_readings = self.steps.last().map_or(&self.start_readings, |s| &s.readings);
        Ok(Trace {
            start,
            start_readings: self.start_readings.iter().map(reading).collect(),
            steps,
            violations: Vec::new(),
            last_readings: last_readings.iter().map(reading).collect(),
        })
    }

    /// Re-checks every step as an IS deviation using core predicates only,
    /// then checks the recorded outcome against the states.
    pub fn validate(&self, game: &HedonicGame) -> Result<(), String> {
        let trace = self.to_trace(game.n()).map_err(|e| e.to_string())?;
        validate_trace(game, &trace).map_err(|e| e.to_string())?;
        let recorded = trace.steps.len();
        if self.outcome.steps() != recorded {
            return Err(format!("outcome claims {} steps, trace holds {recorded}", self.outcome.steps()));
        }
        match self.outcome {
            OutcomeDoc::Converged { .. } => {
                let last = trace.state(recorded).expect("last state exists");
                if !is_stable(game, last, StabilityKind::IS) {
                    return Err("final partition is not IS".into());
                }
            }
            OutcomeDoc::CycleDetected { prefix_len, cycle_len } => {
                if cycle_len == 0 || trace.state(prefix_len) != trace.state(prefix_len + cycle_len) {
                    return Err(format!("state {prefix_len} does not recur after {cycle_len} steps"));
                }
            }
            OutcomeDoc::StepLimitReached { .. } => {}
        }
        Ok(())
    }
}
