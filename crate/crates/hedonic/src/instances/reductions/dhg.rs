//! SAT to dichotomous games.

use crate::core::{AgentId, Partition};
use crate::games::{ApprovalRule, DichotomousGame};
use crate::instances::{InstanceError, Lit, NamedInstance, SatFormula};

use super::{check_agents, with_singletons};

/// One literal agent per literal occurrence, clause-major.
struct Occurrences {
    /// (literal, clause) per literal agent, offset by `base`.
    lits: Vec<(Lit, usize)>,
    base: AgentId,
}

impl Occurrences {
    fn new(f: &SatFormula, base: AgentId) -> Self {
        let lits = f.clauses.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |&l| (l, j))).collect();
        Occurrences { lits, base }
    }

    fn ids(&self) -> impl Iterator<Item = (AgentId, Lit, usize)> + '_ {
        self.lits.iter().enumerate().map(|(k, &(l, j))| (self.base + k, l, j))
    }

    fn of(&self, pred: impl Fn(Lit, usize) -> bool) -> Vec<AgentId> {
        self.ids().filter(|&(_, l, j)| pred(l, j)).map(|(a, _, _)| a).collect()
    }
}

/// Clause agents k, k², k³ come first, then v, v², v³ per variable, then
/// the literal agents. On (3,B2) formulas the approvals are exactly the
/// clause/variable/literal table; other formulas use the same scheme with
/// P_i and N_i standing for the positive and negative occurrence agents of
/// variable i.
pub(super) fn exists(f: &SatFormula) -> Result<NamedInstance, InstanceError> {
    let (m, p) = (f.num_clauses(), f.num_vars);
    let occ = Occurrences::new(f, 3 * m + 3 * p);
    let n = check_agents((3 * m + 3 * p + occ.lits.len()) as u128)?;
    let k = |j: usize, t: usize| 3 * j + t;
    let v = |i: usize, t: usize| 3 * m + 3 * i + t;
    let mut approvals: Vec<Vec<Vec<AgentId>>> = vec![Vec::new(); n];
    for j in 0..m {
        for a in occ.of(|_, c| c == j) {
            approvals[k(j, 0)].push(vec![k(j, 0), a]);
        }
        approvals[k(j, 0)].push(vec![k(j, 0), k(j, 1)]);
        approvals[k(j, 1)].push(vec![k(j, 1), k(j, 2)]);
        approvals[k(j, 2)].push(vec![k(j, 0), k(j, 2)]);
    }
    for i in 0..p {
        for positive in [true, false] {
            let group = occ.of(|l, _| l == Lit { var: i, positive });
            let with_v = [group.clone(), vec![v(i, 0)]].concat();
            approvals[v(i, 0)].push(with_v.clone());
            for &a in &group {
                if group.len() >= 2 {
                    approvals[a].push(group.clone());
                }
                approvals[a].push(with_v.clone());
            }
        }
        approvals[v(i, 0)].push(vec![v(i, 0), v(i, 1)]);
        approvals[v(i, 1)].push(vec![v(i, 1), v(i, 2)]);
        approvals[v(i, 2)].push(vec![v(i, 0), v(i, 2)]);
    }
    for (a, _, j) in occ.ids() {
        approvals[a].push(vec![a, k(j, 0)]);
    }
    let game = DichotomousGame::new(approvals)?;
    Ok(NamedInstance::new("sat→dhg-exists", game)
        .with_start("singletons", Partition::singletons(n))
        .with_note("layout", "k_j, k_j^2, k_j^3 per clause; v_i, v_i^2, v_i^3 per variable; then literal agents"))
}

/// Clause agents k_j, k'_j per clause, then one literal agent per
/// occurrence. Approvals are rule-based.
pub(super) fn converge(f: &SatFormula) -> Result<NamedInstance, InstanceError> {
    let m = f.num_clauses();
    if m == 0 {
        return Err(InstanceError::FormulaClassViolation("formula has no clauses".into()));
    }
    let occ = Occurrences::new(f, 2 * m);
    let n = check_agents((2 * m + occ.lits.len()) as u128)?;
    let (k, kp) = (|j: usize| 2 * j, |j: usize| 2 * j + 1);
    let mut rules: Vec<Vec<ApprovalRule>> = vec![Vec::new(); n];
    for j in 0..m {
        let next = (j + 1) % m;
        let lits = occ.of(|_, c| c == next);
        if !lits.is_empty() {
            rules[k(j)].push(ApprovalRule::Superset { required: vec![kp(next)], any_of: lits });
        }
        rules[kp(j)].push(ApprovalRule::Superset { required: vec![k(j)], any_of: vec![] });
    }
    for (a, l, j) in occ.ids() {
        rules[a].push(ApprovalRule::Superset { required: vec![kp(j)], any_of: vec![] });
        let allowed = occ.of(|x, _| x.var == l.var);
        let opposite = occ.of(|x, _| x.var == l.var && x.positive != l.positive);
        rules[a].push(ApprovalRule::Within { allowed, missing_one_of: opposite });
    }
    let game = DichotomousGame::with_rules(vec![Vec::new(); n], rules)?;
    let mut groups: Vec<Vec<AgentId>> = (0..m).map(|j| vec![k(j), kp(j)]).collect();
    for i in 0..f.num_vars {
        let g = occ.of(|x, _| x.var == i);
        if !g.is_empty() {
            groups.push(g);
        }
    }
    Ok(NamedInstance::new("sat→dhg-converge", game)
        .with_start("initial", with_singletons(n, groups)?)
        .with_note("layout", "k_j, k'_j per clause; then one literal agent per occurrence"))
}
