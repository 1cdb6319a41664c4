//! Versioned JSON instance files.
//!
//! Rationals are `"p/q"` strings, weak orders are lists of indifference
//! classes (best first) and partitions are sorted lists of sorted agent
//! lists. The full schema is in `docs/instance-format.md`.

use std::fmt;

use hedonic::core::{Coalition, CoreError, DeviationMove, Partition, TargetRef};
use hedonic::games::{
    AnonymousGame, ApprovalRule, Color, DichotomousGame, DiversityGame, FractionalGame, GameError, HedonicGame,
    RatioKey, Rational, Tail, WeakOrder,
};
use hedonic::instances::{Claim, NamedInstance};
use indexmap::IndexMap;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("unsupported format_version {0} (this build reads {FORMAT_VERSION})")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl FormatError {
    pub(crate) fn from_json(e: serde_json::Error) -> Self {
        // serde_json appends the position to its message; keep it separate
        let full = e.to_string();
        let msg = match full.rfind(" at line ") {
            Some(k) => full[..k].to_string(),
            None => full,
        };
        FormatError::Syntax { line: e.line(), column: e.column(), msg }
    }
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

/// A rational written as `"p/q"`; `"p"` is also accepted on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Rat).map_err(|e: GameError| de::Error::custom(e))
    }
}

/// An order key: a coalition size (anonymous games) or a red fraction
/// (diversity games).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Key {
    Size(usize),
    Ratio(Rat),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailDoc {
    Bottom,
    Ascending,
    Descending,
}

/// Plain list of classes when unlisted keys share the bottom class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderDoc {
    Classes(Vec<Vec<Key>>),
    WithTail { classes: Vec<Vec<Key>>, tail: TailDoc },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleDoc {
    Superset { required: Vec<usize>, any_of: Vec<usize> },
    Within { allowed: Vec<usize>, missing_one_of: Vec<usize> },
}

/// Kind-specific game data; which fields are required depends on the kind.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Payload {
    /// ahg, hdg: distinct orders.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profiles: Option<Vec<OrderDoc>>,
    /// ahg, hdg: index into `profiles` per agent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile_of: Option<Vec<usize>>,
    /// fhg: weight of every pair not listed in `weights`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<Rat>,
    /// fhg: directed entries `[i, j, w(i,j)]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<(usize, usize, Rat)>>,
    /// dhg: approved coalitions per agent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approvals: Option<Vec<Vec<Vec<usize>>>>,
    /// dhg: approval rules per agent, for families too large to list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<Vec<RuleDoc>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameKind {
    Ahg,
    Hdg,
    Fhg,
    Dhg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    pub kind: GameKind,
    pub n: usize,
    pub payload: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NewKw {
    New,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetDoc {
    New(NewKw),
    Join(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveDoc {
    pub agent: usize,
    pub target: TargetDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "kebab-case")]
pub enum ClaimDoc {
    NoIsPartition,
    Stable { start: String },
    UniqueIs { start: String },
    ScriptReaches { script: String, start: String, end: String },
    CycleScript { script: String, start: String },
    ForcedCycle { script: String, start: String },
    CycleReachable { start: String },
    NoPathToStability { start: String },
    PathToStability { start: String },
    Strict { holds: bool },
    NaturalSp { holds: bool },
    AxisSp { axis: Vec<usize> },
    SolitaryHomogeneous { script: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub game: GameDoc,
    /// One character per agent, `R` or `B`; diversity games only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub starts: IndexMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub scripts: IndexMap<String, Vec<MoveDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<ClaimDoc>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub notes: IndexMap<String, String>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let doc: InstanceFile = serde_json::from_str(text).map_err(FormatError::from_json)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(FormatError::Version(doc.format_version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_instance(inst: &NamedInstance) -> Self {
        let (game, colors) = game_doc(&inst.game);
        InstanceFile {
            format_version: FORMAT_VERSION,
            id: Some(inst.id.clone()),
            game,
            colors,
            starts: inst.starts.iter().map(|(k, p)| (k.clone(), p.to_vecs())).collect(),
            scripts: inst.scripts.iter().map(|(k, m)| (k.clone(), m.iter().map(move_doc).collect())).collect(),
            expected: inst.expected.iter().map(claim_doc).collect(),
            notes: inst.notes.iter().cloned().collect(),
        }
    }

    pub fn to_instance(&self) -> Result<NamedInstance, FormatError> {
        let game = build_game(&self.game, self.colors.as_deref())?;
        let n = game.n();
        let mut inst = NamedInstance::new(self.id.clone().unwrap_or_default(), game);
        for (name, groups) in &self.starts {
            let p = Partition::new(n, groups.clone()).map_err(|e| invalid(format!("start {name:?}: {e}")))?;
            inst.starts.push((name.clone(), p));
        }
        for (name, moves) in &self.scripts {
            let moves = moves
                .iter()
                .enumerate()
                .map(|(k, m)| to_move(m, n).map_err(|e| invalid(format!("script {name:?} move {k}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            inst.scripts.push((name.clone(), moves));
        }
        inst.expected = self.expected.iter().map(to_claim).collect();
        inst.notes = self.notes.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        Ok(inst)
    }
}

pub fn move_doc(m: &DeviationMove) -> MoveDoc {
    let target = match &m.target {
        TargetRef::NewSingleton => TargetDoc::New(NewKw::New),
        TargetRef::ExistingCoalition(c) => TargetDoc::Join(c.members().to_vec()),
    };
    MoveDoc { agent: m.agent, target }
}

pub fn to_move(m: &MoveDoc, n: usize) -> Result<DeviationMove, FormatError> {
    if m.agent >= n {
        return Err(CoreError::AgentOutOfRange { agent: m.agent, n }.into());
    }
    Ok(match &m.target {
        TargetDoc::New(_) => DeviationMove::alone(m.agent),
        TargetDoc::Join(members) => {
            if let Some(&a) = members.iter().find(|&&a| a >= n) {
                return Err(CoreError::AgentOutOfRange { agent: a, n }.into());
            }
            DeviationMove::join(m.agent, Coalition::new(members.clone())?)
        }
    })
}

pub fn claim_doc(c: &Claim) -> ClaimDoc {
    match c.clone() {
        Claim::NoIsPartition => ClaimDoc::NoIsPartition,
        Claim::Stable { start } => ClaimDoc::Stable { start },
        Claim::UniqueIs { start } => ClaimDoc::UniqueIs { start },
        Claim::ScriptReaches { script, start, end } => ClaimDoc::ScriptReaches { script, start, end },
        Claim::CycleScript { script, start } => ClaimDoc::CycleScript { script, start },
        Claim::ForcedCycle { script, start } => ClaimDoc::ForcedCycle { script, start },
        Claim::CycleReachable { start } => ClaimDoc::CycleReachable { start },
        Claim::NoPathToStability { start } => ClaimDoc::NoPathToStability { start },
        Claim::PathToStability { start } => ClaimDoc::PathToStability { start },
        Claim::Strict { holds } => ClaimDoc::Strict { holds },
        Claim::NaturalSp { holds } => ClaimDoc::NaturalSp { holds },
        Claim::AxisSp { axis } => ClaimDoc::AxisSp { axis },
        Claim::SolitaryHomogeneous { script } => ClaimDoc::SolitaryHomogeneous { script },
    }
}

pub fn to_claim(c: &ClaimDoc) -> Claim {
    match c.clone() {
        ClaimDoc::NoIsPartition => Claim::NoIsPartition,
        ClaimDoc::Stable { start } => Claim::Stable { start },
        ClaimDoc::UniqueIs { start } => Claim::UniqueIs { start },
        ClaimDoc::ScriptReaches { script, start, end } => Claim::ScriptReaches { script, start, end },
        ClaimDoc::CycleScript { script, start } => Claim::CycleScript { script, start },
        ClaimDoc::ForcedCycle { script, start } => Claim::ForcedCycle { script, start },
        ClaimDoc::CycleReachable { start } => Claim::CycleReachable { start },
        ClaimDoc::NoPathToStability { start } => Claim::NoPathToStability { start },
        ClaimDoc::PathToStability { start } => Claim::PathToStability { start },
        ClaimDoc::Strict { holds } => Claim::Strict { holds },
        ClaimDoc::NaturalSp { holds } => Claim::NaturalSp { holds },
        ClaimDoc::AxisSp { axis } => Claim::AxisSp { axis },
        ClaimDoc::SolitaryHomogeneous { script } => Claim::SolitaryHomogeneous { script },
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameKind::Ahg => "ahg",
            GameKind::Hdg => "hdg",
            GameKind::Fhg => "fhg",
            GameKind::Dhg => "dhg",
        })
    }
}

fn order_doc<K: Ord + std::hash::Hash + Clone>(w: &WeakOrder<K>, key: impl Fn(&K) -> Key) -> OrderDoc {
    let classes = w.classes().iter().map(|c| c.iter().map(&key).collect()).collect();
    match w.tail() {
        Tail::Bottom => OrderDoc::Classes(classes),
        Tail::Ascending => OrderDoc::WithTail { classes, tail: TailDoc::Ascending },
        Tail::Descending => OrderDoc::WithTail { classes, tail: TailDoc::Descending },
    }
}

fn game_doc(game: &HedonicGame) -> (GameDoc, Option<String>) {
    let n = game.n();
    let mut payload = Payload::default();
    let mut colors = None;
    let kind = match game {
        HedonicGame::Anonymous(g) => {
            payload.profiles = Some(g.profiles().iter().map(|w| order_doc(w, |&k| Key::Size(k))).collect());
            payload.profile_of = Some((0..n).map(|a| g.profile_of(a)).collect());
            GameKind::Ahg
        }
        HedonicGame::Diversity(g) => {
            let ratio = |k: &RatioKey| Key::Ratio(Rat(Rational::from(*k)));
            payload.profiles = Some(g.profiles().iter().map(|w| order_doc(w, ratio)).collect());
            payload.profile_of = Some((0..n).map(|a| g.profile_of(a)).collect());
            colors = Some(g.colors().iter().map(|c| if *c == Color::Red { 'R' } else { 'B' }).collect());
            GameKind::Hdg
        }
        HedonicGame::Fractional(g) => {
            payload.default = Some(Rat(g.default_weight()));
            payload.weights =
                Some((0..n).flat_map(|i| g.explicit_row(i).map(move |(j, w)| (i, j, Rat(w)))).collect());
            GameKind::Fhg
        }
        HedonicGame::Dichotomous(g) => {
            payload.approvals = Some((0..n).map(|a| g.approved(a)).collect());
            if g.has_rules() {
                let rule = |r: &ApprovalRule| match r.clone() {
                    ApprovalRule::Superset { required, any_of } => RuleDoc::Superset { required, any_of },
                    ApprovalRule::Within { allowed, missing_one_of } => RuleDoc::Within { allowed, missing_one_of },
                };
                payload.rules = Some((0..n).map(|a| g.rules(a).iter().map(rule).collect()).collect());
            }
            GameKind::Dhg
        }
    };
    (GameDoc { kind, n, payload }, colors)
}

fn order<K: Ord + std::hash::Hash + Clone>(
    doc: &OrderDoc,
    key: impl Fn(&Key) -> Result<K, FormatError>,
) -> Result<WeakOrder<K>, FormatError> {
    let (classes, tail) = match doc {
        OrderDoc::Classes(c) => (c, Tail::Bottom),
        OrderDoc::WithTail { classes, tail } => (
            classes,
            match tail {
                TailDoc::Bottom => Tail::Bottom,
                TailDoc::Ascending => Tail::Ascending,
                TailDoc::Descending => Tail::Descending,
            },
        ),
    };
    let classes = classes
        .iter()
        .map(|c| c.iter().map(&key).collect::<Result<Vec<K>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeakOrder::new(classes, tail)?)
}

fn size_key(k: &Key) -> Result<usize, FormatError> {
    match k {
        Key::Size(s) => Ok(*s),
        Key::Ratio(r) => Err(invalid(format!("anonymous orders rank sizes, got \"{}\"", r.0))),
    }
}

fn ratio_key(k: &Key) -> Result<RatioKey, FormatError> {
    let r = match k {
        Key::Ratio(r) => &r.0,
        Key::Size(s) => return Err(invalid(format!("diversity orders rank \"p/q\" fractions, got {s}"))),
    };
    let to_u64 = |b: String| b.parse::<u64>().ok();
    match (to_u64(r.numer().to_string()), to_u64(r.denom().to_string())) {
        (Some(p), Some(q)) if p <= q => Ok(RatioKey::new(p, q)),
        _ => Err(invalid(format!("red fraction {r} outside [0, 1]"))),
    }
}

fn need<'a, T>(field: &'a Option<T>, kind: GameKind, name: &str) -> Result<&'a T, FormatError> {
    field.as_ref().ok_or_else(|| invalid(format!("{kind} payload needs \"{name}\"")))
}

fn forbid<T>(field: &Option<T>, kind: GameKind, name: &str) -> Result<(), FormatError> {
    match field {
        Some(_) => Err(invalid(format!("{kind} payload does not take \"{name}\""))),
        None => Ok(()),
    }
}

fn check_n(kind: GameKind, declared: usize, actual: usize) -> Result<(), FormatError> {
    if declared != actual {
        return Err(invalid(format!("{kind} game declares n = {declared} but describes {actual} agents")));
    }
    Ok(())
}

fn build_game(doc: &GameDoc, colors: Option<&str>) -> Result<HedonicGame, FormatError> {
    let (kind, n, p) = (doc.kind, doc.n, &doc.payload);
    if kind != GameKind::Hdg && colors.is_some() {
        return Err(invalid(format!("{kind} game does not take colors")));
    }
    let game: HedonicGame = match kind {
        GameKind::Ahg | GameKind::Hdg => {
            forbid(&p.default, kind, "default")?;
            forbid(&p.weights, kind, "weights")?;
            forbid(&p.approvals, kind, "approvals")?;
            forbid(&p.rules, kind, "rules")?;
            let profiles = need(&p.profiles, kind, "profiles")?;
            let profile_of = need(&p.profile_of, kind, "profile_of")?.clone();
            check_n(kind, n, profile_of.len())?;
            if kind == GameKind::Ahg {
                let orders = profiles.iter().map(|o| order(o, size_key)).collect::<Result<_, _>>()?;
                AnonymousGame::new(n, orders, profile_of)?.into()
            } else {
                let colors = colors.ok_or_else(|| invalid("hdg game needs \"colors\""))?;
                let colors = colors
                    .chars()
                    .map(|c| match c {
                        'R' => Ok(Color::Red),
                        'B' => Ok(Color::Blue),
                        other => Err(invalid(format!("color {other:?} is neither R nor B"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                check_n(kind, n, colors.len())?;
                let orders = profiles.iter().map(|o| order(o, ratio_key)).collect::<Result<_, _>>()?;
                DiversityGame::new(colors, orders, profile_of)?.into()
            }
        }
        GameKind::Fhg => {
            forbid(&p.profiles, kind, "profiles")?;
            forbid(&p.profile_of, kind, "profile_of")?;
            forbid(&p.approvals, kind, "approvals")?;
            forbid(&p.rules, kind, "rules")?;
            let default = p.default.clone().map_or_else(Rational::zero, |r| r.0);
            let entries = need(&p.weights, kind, "weights")?.iter().map(|(i, j, w)| (*i, *j, w.0.clone())).collect();
            FractionalGame::new(n, default, entries)?.into()
        }
        GameKind::Dhg => {
            forbid(&p.profiles, kind, "profiles")?;
            forbid(&p.profile_of, kind, "profile_of")?;
            forbid(&p.default, kind, "default")?;
            forbid(&p.weights, kind, "weights")?;
            let approvals = need(&p.approvals, kind, "approvals")?.clone();
            check_n(kind, n, approvals.len())?;
            let rules = match &p.rules {
                None => vec![Vec::new(); n],
                Some(rs) => {
                    check_n(kind, n, rs.len())?;
                    rs.iter()
                        .map(|list| {
                            list.iter()
                                .map(|r| match r.clone() {
                                    RuleDoc::Superset { required, any_of } => {
                                        ApprovalRule::Superset { required, any_of }
                                    }
                                    RuleDoc::Within { allowed, missing_one_of } => {
                                        ApprovalRule::Within { allowed, missing_one_of }
                                    }
                                })
                                .collect()
                        })
                        .collect()
                }
            };
            DichotomousGame::with_rules(approvals, rules)?.into()
        }
    };
    Ok(game)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_errors_carry_positions() {
        let e = InstanceFile::parse("{\n  \"format_version\": 1,\n  \"game\": oops\n}").unwrap_err();
        let FormatError::Syntax { line, column, .. } = e else { panic!("{e}") };
        assert_eq!((line, column), (3, 11));
        let e = InstanceFile::parse("{\"format_version\": 1, \"game\": {\"kind\": \"xhg\"}}").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 1, .. }), "{e}");
    }

    #[test]
    fn rationals_are_checked_while_parsing() {
        let text = r#"{"format_version": 1, "game": {"kind": "fhg", "n": 2, "payload": {"weights": [[0, 1, "1/0"]]}}}"#;
        let e = InstanceFile::parse(text).unwrap_err();
        assert!(matches!(e, FormatError::Syntax { .. }), "{e}");
    }

    #[test]
    fn versions_other_than_one_are_rejected() {
        let text = r#"{"format_version": 2, "game": {"kind": "dhg", "n": 0, "payload": {"approvals": []}}}"#;
        assert!(matches!(InstanceFile::parse(text), Err(FormatError::Version(2))));
    }

    #[test]
    fn payload_fields_must_match_the_kind() {
        let text = r#"{"format_version": 1, "game": {"kind": "ahg", "n": 1,
            "payload": {"profiles": [[[1]]], "profile_of": [0], "weights": []}}}"#;
        let doc = InstanceFile::parse(text).unwrap();
        assert!(doc.to_instance().is_err());
    }
}
