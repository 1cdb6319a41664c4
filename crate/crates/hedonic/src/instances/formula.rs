//! CNF formulas and exact-cover instances, with brute-force oracles for
//! toy sizes.

use std::fmt;
use std::str::FromStr;

use super::InstanceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var as i64 + 1;
        write!(f, "{}", if self.positive { v } else { -v })
    }
}

/// CNF over variables `0..num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

impl SatFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Result<Self, InstanceError> {
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(InstanceError::FormulaClassViolation(format!("clause {} is empty", j + 1)));
            }
            if let Some(l) = c.iter().find(|l| l.var >= num_vars) {
                return Err(InstanceError::FormulaClassViolation(format!(
                    "clause {} uses variable {} of {num_vars}",
                    j + 1,
                    l.var + 1
                )));
            }
        }
        Ok(SatFormula { num_vars, clauses })
    }

    /// Parses DIMACS CNF. Comment lines start with `c`; the `p cnf` header is
    /// optional, in which case the variable count is the largest index used.
    pub fn parse_dimacs(text: &str) -> Result<Self, InstanceError> {
        let bad = |m: String| InstanceError::FormulaClassViolation(m);
        let mut declared = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[0] != "cnf" {
                    return Err(bad(format!("bad header {line:?}")));
                }
                declared = Some(parts[1].parse::<usize>().map_err(|e| bad(e.to_string()))?);
                continue;
            }
            for tok in line.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| bad(format!("bad literal {tok:?}")))?;
                if v == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(Lit { var: v.unsigned_abs() as usize - 1, positive: v > 0 });
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let used = clauses.iter().flatten().map(|l: &Lit| l.var + 1).max().unwrap_or(0);
        Self::new(declared.unwrap_or(used), clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{l} "));
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// (positive, negative) occurrence counts per variable.
    pub fn occurrence_counts(&self) -> Vec<(usize, usize)> {
        let mut counts = vec![(0, 0); self.num_vars];
        for l in self.clauses.iter().flatten() {
            if l.positive {
                counts[l.var].0 += 1;
            } else {
                counts[l.var].1 += 1;
            }
        }
        counts
    }

    /// Clause-major positions `(clause, slot)` of a literal.
    pub fn occurrences(&self, lit: Lit) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, c) in self.clauses.iter().enumerate() {
            for (k, &l) in c.iter().enumerate() {
                if l == lit {
                    out.push((j, k));
                }
            }
        }
        out
    }

    /// Every clause has three literals over distinct variables, and every
    /// variable occurs exactly twice positively and twice negatively.
    pub fn is_3b2(&self) -> bool {
        self.clauses.iter().all(|c| {
            c.len() == 3 && c[0].var != c[1].var && c[0].var != c[2].var && c[1].var != c[2].var
        }) && self.occurrence_counts().iter().all(|&c| c == (2, 2))
    }

    pub fn require_3b2(&self) -> Result<(), InstanceError> {
        if self.is_3b2() {
            Ok(())
        } else {
            Err(InstanceError::FormulaClassViolation(
                "expected three distinct variables per clause and each variable twice positive, twice negative".into(),
            ))
        }
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    /// First satisfying assignment in binary counting order, if any.
    pub fn brute_force_sat(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars < 32, "brute force is for toy formulas");
        (0u32..1 << self.num_vars)
            .map(|mask| (0..self.num_vars).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.satisfied_by(a))
    }
}

impl FromStr for SatFormula {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_dimacs(s)
    }
}

/// Ground set `0..ground_size` and a family of 3-element subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3CInstance {
    pub ground_size: usize,
    pub sets: Vec<[usize; 3]>,
}

impl X3CInstance {
    pub fn new(ground_size: usize, sets: Vec<[usize; 3]>) -> Result<Self, InstanceError> {
        let bad = InstanceError::FormulaClassViolation;
        if ground_size == 0 || !ground_size.is_multiple_of(3) {
            return Err(bad(format!("ground set size {ground_size} is not a positive multiple of 3")));
        }
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(bad(format!("set {s:?} has repeated elements")));
            }
            if s[2] >= ground_size {
                return Err(bad(format!("set {s:?} leaves the ground set")));
            }
        }
        Ok(X3CInstance { ground_size, sets })
    }

    /// Parses `R <size>` followed by one set per line as three 1-based
    /// elements. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let bad = |m: String| InstanceError::FormulaClassViolation(m);
        let mut size = None;
        let mut sets = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('R') {
                size = Some(rest.trim().parse::<usize>().map_err(|e| bad(e.to_string()))?);
                continue;
            }
            let v: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad(format!("bad element {t:?}"))))
                .collect::<Result<_, _>>()?;
            if v.len() != 3 || v.contains(&0) {
                return Err(bad(format!("expected three 1-based elements, got {line:?}")));
            }
            sets.push([v[0] - 1, v[1] - 1, v[2] - 1]);
        }
        Self::new(size.ok_or_else(|| bad("missing `R <size>` line".into()))?, sets)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("R {}\n", self.ground_size);
        for t in &self.sets {
            s.push_str(&format!("{} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
        }
        s
    }

    /// Number of sets containing each element.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut c = vec![0; self.ground_size];
        for s in &self.sets {
            for &e in s {
                c[e] += 1;
            }
        }
        c
    }

    pub fn require_covering(&self) -> Result<(), InstanceError> {
        match self.occurrences().iter().position(|&c| c == 0) {
            Some(e) => Err(InstanceError::FormulaClassViolation(format!("element {} lies in no set", e + 1))),
            None => Ok(()),
        }
    }

    /// Surplus of sets over the size of an exact cover.
    pub fn surplus(&self) -> Option<usize> {
        self.sets.len().checked_sub(self.ground_size / 3)
    }

    /// Indices of an exact cover, found by backtracking on the smallest
    /// uncovered element.
    pub fn brute_force_cover(&self) -> Option<Vec<usize>> {
        fn go(inst: &X3CInstance, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
            let Some(e) = covered.iter().position(|&c| !c) else {
                return true;
            };
            for (i, s) in inst.sets.iter().enumerate() {
                if s.contains(&e) && s.iter().all(|&x| !covered[x]) {
                    s.iter().for_each(|&x| covered[x] = true);
                    chosen.push(i);
                    if go(inst, covered, chosen) {
                        return true;
                    }
                    chosen.pop();
                    s.iter().for_each(|&x| covered[x] = false);
                }
            }
            false
        }
        let mut covered = vec![false; self.ground_size];
        let mut chosen = Vec::new();
        go(self, &mut covered, &mut chosen).then(|| {
            chosen.sort_unstable();
            chosen
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let f = SatFormula::parse_dimacs("c toy\np cnf 3 2\n1 -2 3 0\n-1 2 0\n").unwrap();
        assert_eq!(f.num_vars, 3);
        assert_eq!(f.clauses[1], vec![Lit::neg(0), Lit::pos(1)]);
        assert_eq!(SatFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn contradiction_is_unsat() {
        let f = SatFormula::new(1, vec![vec![Lit::pos(0)], vec![Lit::neg(0)]]).unwrap();
        assert!(f.brute_force_sat().is_none());
    }

    #[test]
    fn b2_class_check() {
        // (x1 ∨ x2 ∨ x3) twice and (¬x1 ∨ ¬x2 ∨ ¬x3) twice
        let p = vec![Lit::pos(0), Lit::pos(1), Lit::pos(2)];
        let n = vec![Lit::neg(0), Lit::neg(1), Lit::neg(2)];
        let f = SatFormula::new(3, vec![p.clone(), p, n.clone(), n]).unwrap();
        assert!(f.is_3b2());
        assert!(f.brute_force_sat().is_some());
        let g = SatFormula::new(3, f.clauses[..3].to_vec()).unwrap();
        assert!(!g.is_3b2());
    }

    #[test]
    fn x3c_cover() {
        let x = X3CInstance::parse("R 6\n1 2 3\n2 3 4\n4 5 6\n").unwrap();
        assert_eq!(x.brute_force_cover(), Some(vec![0, 2]));
        let y = X3CInstance::new(6, vec![[0, 1, 2], [1, 3, 4], [2, 4, 5]]).unwrap();
        assert_eq!(y.brute_force_cover(), None);
        assert!(X3CInstance::new(4, vec![]).is_err());
    }
}
