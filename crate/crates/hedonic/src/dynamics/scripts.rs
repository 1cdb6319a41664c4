use crate::core::{DeviationMove, Partition};
use crate::games::{Color, HedonicGame};
use crate::instances::{self, homogeneous_coalition, r, HdgBuilder, OrderSpec, ScriptWriter};

use super::{replay_final, DynamicsError};

/// A bundled move list together with the game it is meant for.
#[derive(Debug, Clone)]
pub struct NamedScript {
    pub id: String,
    pub game: HedonicGame,
    pub start: Partition,
    pub moves: Vec<DeviationMove>,
    /// Expected final partition.
    pub expected: Partition,
}

impl NamedScript {
    /// Replays the script and compares the end state with `expected`.
    pub fn check(&self) -> Result<bool, DynamicsError> {
        Ok(replay_final(&self.game, &self.start, &self.moves)? == self.expected)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomogeneousColor {
    Blue,
    Red,
}

/// Standalone homogeneous-coalition construction for `k` target agents of
/// the given color, started from singletons. Targets are agents `0..k`;
/// `k` must be at least 2.
pub fn hdg_homogeneous(k: usize, color: HomogeneousColor) -> Result<NamedScript, DynamicsError> {
    let (c, spec) = match color {
        HomogeneousColor::Blue => (Color::Blue, OrderSpec::SinglePeaked(vec![r(1, 3), r(0, 1), r(1, 2)])),
        HomogeneousColor::Red => (Color::Red, OrderSpec::SinglePeaked(vec![r(2, 3), r(1, 1), r(1, 2)])),
    };
    let mut b = HdgBuilder::new();
    let targets = b.add_many(k, c, &spec);
    let mut w = ScriptWriter::new();
    homogeneous_coalition(&mut b, &mut w, &targets, c);
    let n = b.n();
    let game = HedonicGame::from(b.build().map_err(|e| DynamicsError::ScriptedMoveInvalid {
        step: 0,
        reason: e.to_string(),
    })?);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for a in 0..n {
        if !seen[a] {
            let g = w.coalition_of(a);
            for &x in &g {
                seen[x] = true;
            }
            groups.push(g);
        }
    }
    let expected = Partition::new(n, groups)?;
    let tag = match color {
        HomogeneousColor::Blue => "blue",
        HomogeneousColor::Red => "red",
    };
    Ok(NamedScript {
        id: format!("hdg-homogeneous-{tag}({k})"),
        game,
        start: Partition::singletons(n),
        moves: w.into_moves(),
        expected,
    })
}

fn ahg7_target() -> Partition {
    Partition::new(7, vec![vec![0, 1], vec![2, 3], vec![4, 5, 6]]).expect("static partition")
}

/// The bundled reachability scripts: both ahg7 scripts and the blue and red
/// homogeneous-coalition constructions for k = 3.
pub fn reach_state_scripts() -> Result<Vec<NamedScript>, DynamicsError> {
    let inst = instances::build("ahg7").map_err(|e| DynamicsError::ScriptedMoveInvalid {
        step: 0,
        reason: e.to_string(),
    })?;
    let mut out = Vec::new();
    for (id, start) in [("ahg7-from-singletons", "singletons"), ("ahg7-from-grand", "grand")] {
        out.push(NamedScript {
            id: id.into(),
            game: inst.game.clone(),
            start: inst.start(start).expect("bundled start").clone(),
            moves: inst.script(id).expect("bundled script").to_vec(),
            expected: ahg7_target(),
        });
    }
    out.push(hdg_homogeneous(3, HomogeneousColor::Blue)?);
    out.push(hdg_homogeneous(3, HomogeneousColor::Red)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_targets_end_together() {
        for color in [HomogeneousColor::Blue, HomogeneousColor::Red] {
            for k in 2..6 {
                let s = hdg_homogeneous(k, color).unwrap();
                assert!(s.check().unwrap(), "{}", s.id);
                let members = s.expected.coalition_of(0).members().to_vec();
                assert_eq!(members, (0..k).collect::<Vec<_>>());
            }
        }
    }
}
