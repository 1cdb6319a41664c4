//! Mechanical checks of the claims attached to bundled instances.

use crate::core::{apply, enumerate_deviations, is_stable, Partition, StabilityKind};
use crate::dynamics::{passes, replay_final, FilterKind};
use crate::games::{single_peaked_check, AxisSpec, HedonicGame};
use crate::search::{
    all_paths_converge, enumerate_partitions, exists_is_partition, exists_path_to_is, ExistenceAnswer,
    ReachabilityAnswer, SearchBudget, Strategy, DEFAULT_CAP,
};

use super::{Claim, InstanceError, NamedInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimVerdict {
    pub holds: bool,
    pub detail: String,
}

impl ClaimVerdict {
    fn new(holds: bool, detail: impl Into<String>) -> Self {
        ClaimVerdict { holds, detail: detail.into() }
    }
}

fn unsupported(m: impl Into<String>) -> InstanceError {
    InstanceError::Unsupported(m.into())
}

fn start<'a>(inst: &'a NamedInstance, name: &str) -> Result<&'a Partition, InstanceError> {
    inst.start(name).ok_or_else(|| unsupported(format!("no start named {name:?}")))
}

fn script<'a>(inst: &'a NamedInstance, name: &str) -> Result<&'a [crate::core::DeviationMove], InstanceError> {
    inst.script(name).ok_or_else(|| unsupported(format!("no script named {name:?}")))
}

/// Picks the existence strategy that scales best for the game's class.
pub(crate) fn strategy_for(game: &HedonicGame) -> Strategy {
    match game {
        HedonicGame::Anonymous(_) | HedonicGame::Diversity(_) => Strategy::TypeReduced,
        HedonicGame::Fractional(g) if g.n() > DEFAULT_CAP => Strategy::PrunedFHG,
        _ => Strategy::Plain,
    }
}

fn budget_note(explored: u64) -> ClaimVerdict {
    ClaimVerdict::new(false, format!("undecided: budget exhausted after {explored} states"))
}

pub fn check_claim(inst: &NamedInstance, claim: &Claim, budget: &SearchBudget) -> Result<ClaimVerdict, InstanceError> {
    let game = &inst.game;
    let search = |e: crate::search::SearchError| unsupported(e.to_string());
    let replay = |moves: &[crate::core::DeviationMove], from: &Partition| {
        replay_final(game, from, moves).map_err(|e| unsupported(e.to_string()))
    };
    Ok(match claim {
        Claim::NoIsPartition => match exists_is_partition(game, strategy_for(game), budget).map_err(search)? {
            ExistenceAnswer::None { checked } => ClaimVerdict::new(true, format!("{checked} candidates, none IS")),
            ExistenceAnswer::Exists(p) => ClaimVerdict::new(false, format!("IS partition {p}")),
            ExistenceAnswer::BudgetExhausted { checked } => budget_note(checked),
        },
        Claim::Stable { start: s } => {
            let p = start(inst, s)?;
            ClaimVerdict::new(is_stable(game, p, StabilityKind::IS), format!("{p}"))
        }
        Claim::UniqueIs { start: s } => {
            let p = start(inst, s)?;
            let all = enumerate_partitions(game.n()).map_err(search)?;
            let stable: Vec<Partition> = all.filter(|q| is_stable(game, q, StabilityKind::IS)).collect();
            let holds = stable.len() == 1 && &stable[0] == p;
            ClaimVerdict::new(holds, format!("{} IS partitions", stable.len()))
        }
        Claim::ScriptReaches { script: sc, start: s, end } => {
            let reached = replay(script(inst, sc)?, start(inst, s)?);
            match reached {
                Ok(q) => ClaimVerdict::new(&q == start(inst, end)?, format!("ends in {q}")),
                Err(e) => ClaimVerdict::new(false, e.to_string()),
            }
        }
        Claim::CycleScript { script: sc, start: s } => {
            let moves = script(inst, sc)?;
            let from = start(inst, s)?;
            match replay(moves, from) {
                Ok(q) => ClaimVerdict::new(!moves.is_empty() && &q == from, format!("{} moves", moves.len())),
                Err(e) => ClaimVerdict::new(false, e.to_string()),
            }
        }
        Claim::ForcedCycle { script: sc, start: s } => {
            let mut p = start(inst, s)?.clone();
            let mut holds = true;
            let mut detail = String::from("every state admits only the scripted move");
            for (k, mv) in script(inst, sc)?.iter().enumerate() {
                let avail = enumerate_deviations(game, &p, StabilityKind::IS);
                if avail.len() != 1 || &avail[0] != mv {
                    holds = false;
                    detail = format!("step {}: {} IS moves available", k + 1, avail.len());
                    break;
                }
                p = apply(&p, mv)?;
            }
            ClaimVerdict::new(holds, detail)
        }
        Claim::CycleReachable { start: s } => match all_paths_converge(game, start(inst, s)?, budget).map_err(search)? {
            ReachabilityAnswer::CycleReachable { prefix, cycle } => {
                ClaimVerdict::new(true, format!("prefix {} moves, cycle {} moves", prefix.len(), cycle.len()))
            }
            ReachabilityAnswer::BudgetExhausted { explored } => budget_note(explored),
            other => ClaimVerdict::new(false, other.label()),
        },
        Claim::NoPathToStability { start: s } | Claim::PathToStability { start: s } => {
            let want_path = matches!(claim, Claim::PathToStability { .. });
            match exists_path_to_is(game, start(inst, s)?, budget).map_err(search)? {
                ReachabilityAnswer::PathFound { moves, .. } => {
                    ClaimVerdict::new(want_path, format!("path of {} moves", moves.len()))
                }
                ReachabilityAnswer::NoPath { explored } => {
                    ClaimVerdict::new(!want_path, format!("{explored} states, none IS"))
                }
                ReachabilityAnswer::BudgetExhausted { explored } => budget_note(explored),
                other => ClaimVerdict::new(false, other.label()),
            }
        }
        Claim::Strict { holds } => {
            let actual = match game {
                HedonicGame::Anonymous(g) => g.is_strict(),
                HedonicGame::Diversity(g) => g.is_strict(),
                _ => return Err(unsupported("strictness is checked for AHG and HDG")),
            };
            ClaimVerdict::new(actual == *holds, format!("strict = {actual}"))
        }
        Claim::NaturalSp { holds } => {
            let actual = match game {
                HedonicGame::Anonymous(g) => g.is_natural_sp(),
                HedonicGame::Diversity(g) => g.is_natural_sp(),
                _ => return Err(unsupported("single-peakedness is checked for AHG and HDG")),
            };
            ClaimVerdict::new(actual == *holds, format!("naturally single-peaked = {actual}"))
        }
        Claim::AxisSp { axis } => {
            let g = game.as_anonymous().ok_or_else(|| unsupported("axis checks need an AHG"))?;
            let domain = g.domain();
            let spec = AxisSpec::Explicit(axis.clone());
            let mut bad = None;
            for (k, order) in g.profiles().iter().enumerate() {
                if !single_peaked_check(order, &spec, &domain)?.ok {
                    bad = Some(k);
                    break;
                }
            }
            match bad {
                None => ClaimVerdict::new(true, "every profile single-peaked on the axis"),
                Some(k) => ClaimVerdict::new(false, format!("profile {k} is not")),
            }
        }
        Claim::SolitaryHomogeneous { script: sc } => {
            let hdg = game.as_diversity().ok_or_else(|| unsupported("solitary homogeneity needs an HDG"))?;
            let moves = script(inst, sc)?;
            let bad = moves.iter().position(|mv| !passes(&[FilterKind::SolitaryHomogeneity], Some(hdg), mv));
            match bad {
                None => ClaimVerdict::new(true, format!("{} moves pass", moves.len())),
                Some(k) => ClaimVerdict::new(false, format!("move {} fails the filter", k + 1)),
            }
        }
    })
}
