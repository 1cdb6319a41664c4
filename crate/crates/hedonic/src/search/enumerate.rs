//! Set partitions as restricted-growth strings: `labels[0] = 0` and each
//! label is at most one more than the largest before it.

use num_bigint::BigUint;

use crate::core::Partition;

use super::SearchError;

pub const DEFAULT_CAP: usize = 13;

/// Iterator over all partitions of `0..n` in lexicographic RGS order.
#[derive(Debug, Clone)]
pub struct Partitions {
    labels: Vec<usize>,
    /// `maxes[i]` = largest label among `labels[..=i]`.
    maxes: Vec<usize>,
    /// Positions below `fixed` never change.
    fixed: usize,
    done: bool,
}

impl Partitions {
    /// Completions of a valid RGS prefix to length `n`.
    pub(crate) fn with_prefix(n: usize, prefix: &[usize]) -> Self {
        let mut labels = prefix.to_vec();
        labels.resize(n, 0);
        let mut maxes = Vec::with_capacity(n);
        let mut m = 0;
        for &l in &labels {
            m = m.max(l);
            maxes.push(m);
        }
        Partitions { labels, maxes, fixed: prefix.len().max(1), done: false }
    }

    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        let mut i = n;
        while i > self.fixed {
            i -= 1;
            if self.labels[i] <= self.maxes[i - 1] {
                self.labels[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let p = Partition::from_labels(&self.labels);
        if self.labels.is_empty() || !self.advance() {
            self.done = true;
        }
        Some(p)
    }
}

pub fn enumerate_partitions(n: usize) -> Result<Partitions, SearchError> {
    enumerate_partitions_capped(n, DEFAULT_CAP)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<Partitions, SearchError> {
    if n > cap {
        return Err(SearchError::CapExceeded { n, cap });
    }
    Ok(Partitions::with_prefix(n, &[]))
}

/// All RGS prefixes of length `k`.
pub(crate) fn prefixes(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 0..k {
        let mut next = Vec::new();
        for p in out {
            let m = p.iter().copied().max().map_or(0, |m| m + 1);
            let top = if i == 0 { 0 } else { m };
            for l in 0..=top {
                let mut q = p.clone();
                q.push(l);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Bell number via the Bell triangle.
pub fn bell_number(n: usize) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().expect("rows are never empty"));
        for x in &row {
            let v = next.last().expect("just pushed") + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_partitions(1).unwrap().count(), 1);
        assert_eq!(enumerate_partitions(3).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(4).unwrap().count(), 15);
        assert_eq!(enumerate_partitions(0).unwrap().count(), 1);
    }

    #[test]
    fn prefixes_cover_everything_once() {
        let n = 7;
        let mut seen = HashSet::new();
        for pre in prefixes(3) {
            for p in Partitions::with_prefix(n, &pre) {
                assert!(seen.insert(p.canonical()));
            }
        }
        assert_eq!(seen.len(), 877);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_partitions(14).unwrap_err(),
            SearchError::CapExceeded { n: 14, cap: DEFAULT_CAP }
        );
    }
}
