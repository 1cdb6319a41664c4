use std::fmt;
use std::str::FromStr;

use crate::core::{DeviationMove, Partition};
use crate::games::HedonicGame;

use super::gamma::GammaMonitor;
use super::lambda::LambdaMonitor;
use super::lambda_r::LambdaRMonitor;
use super::lex::LexMonitor;
use super::PotentialError;

/// Observes a run step by step; it cannot veto or alter anything.
pub trait Monitor: Send {
    fn name(&self) -> &'static str;
    fn start(&mut self, start: &Partition) -> MonitorReading;
    fn observe(&mut self, pre: &Partition, mv: &DeviationMove, post: &Partition) -> MonitorReading;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ReadingValue {
    Int(i64),
    Ints(Vec<i64>),
    Pair(Vec<i64>, Vec<i64>),
}

impl fmt::Display for ReadingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReadingValue::Int(v) => write!(f, "{v}"),
            ReadingValue::Ints(v) => write!(f, "{v:?}"),
            ReadingValue::Pair(a, b) => write!(f, "({a:?}, {b:?})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonitorReading {
    pub monitor: String,
    pub value: ReadingValue,
    /// Broken claims detected at this step; empty when all is well.
    pub violations: Vec<String>,
}

impl MonitorReading {
    pub fn new(monitor: &str, value: ReadingValue, violations: Vec<String>) -> Self {
        MonitorReading { monitor: monitor.to_string(), value, violations }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonitorRef {
    Gamma,
    Lambda,
    Lex,
    LambdaR,
}

impl MonitorRef {
    pub fn name(self) -> &'static str {
        match self {
            MonitorRef::Gamma => "gamma",
            MonitorRef::Lambda => "lambda",
            MonitorRef::Lex => "lex",
            MonitorRef::LambdaR => "lambda-r",
        }
    }
}

impl FromStr for MonitorRef {
    type Err = PotentialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gamma" => Ok(MonitorRef::Gamma),
            "lambda" => Ok(MonitorRef::Lambda),
            "lex" => Ok(MonitorRef::Lex),
            "lambda-r" | "lambda_r" => Ok(MonitorRef::LambdaR),
            other => Err(PotentialError::UnknownMonitor(other.to_string())),
        }
    }
}

/// Instantiates a monitor bound to `game`, checking its preconditions.
pub fn build_monitor<'g>(which: MonitorRef, game: &'g HedonicGame) -> Result<Box<dyn Monitor + 'g>, PotentialError> {
    Ok(match which {
        MonitorRef::Gamma => Box::new(GammaMonitor::new(game)),
        MonitorRef::Lambda => {
            let g = game.as_anonymous().ok_or(PotentialError::WrongGame("lambda needs an anonymous game"))?;
            Box::new(LambdaMonitor::new(g)?)
        }
        MonitorRef::Lex => {
            let g = game.as_fractional().ok_or(PotentialError::WrongGame("lex needs a fractional game"))?;
            Box::new(LexMonitor::new(g)?)
        }
        MonitorRef::LambdaR => {
            let g = game.as_diversity().ok_or(PotentialError::WrongGame("lambda-r needs a diversity game"))?;
            Box::new(LambdaRMonitor::new(g))
        }
    })
}
