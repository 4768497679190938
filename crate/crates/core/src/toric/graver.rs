//! The Graver basis of `ker A`: the nonzero kernel vectors that are
//! minimal for the conformal order (same signs, smaller magnitudes).

use std::collections::HashSet;

use crate::configuration::Configuration;
use crate::error::{Error, Result};

/// Limit on the number of partial vectors explored.
const SEARCH_LIMIT: usize = 2_000_000;

/// `g ⊑ (p, q)`: the positive part of `g` is below `p` and the negative
/// part below `q`.
pub fn conformally_below(g: &[i64], p: &[i64], q: &[i64]) -> bool {
    g.iter()
        .zip(p.iter().zip(q))
        .all(|(&x, (&a, &b))| if x >= 0 { x <= a } else { -x <= b })
}

/// Completion search over pairs `(p, q)` with disjoint supports: a unit
/// vector is added only when it moves `A(p − q)` towards zero, which
/// reaches every minimal solution; nodes above a found solution are cut.
/// Levels are processed by total degree, so found solutions are minimal.
/// Both `g` and `−g` are returned, sorted.
pub fn graver_basis(cfg: &Configuration) -> Result<Vec<Vec<i64>>> {
    let n = cfg.n();
    let d = cfg.d();
    let dot = |r: &[i64], j: usize| -> i64 { r.iter().zip(cfg.column(j)).map(|(x, y)| x * y).sum() };
    let mut found: Vec<Vec<i64>> = Vec::new();
    // Every kernel vector has a nonzero positive part, so starting from
    // the positive unit vectors suffices.
    let mut frontier: Vec<(Vec<i64>, Vec<i64>, Vec<i64>)> = (0..n)
        .map(|j| {
            let mut p = vec![0; n];
            p[j] = 1;
            (p, vec![0; n], cfg.column(j).to_vec())
        })
        .collect();
    let mut explored = 0usize;
    while !frontier.is_empty() {
        for (p, q, r) in &frontier {
            if r.iter().all(|&x| x == 0) {
                let g: Vec<i64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
                if !found.iter().any(|f| conformally_below(f, p, q)) {
                    found.push(g);
                }
            }
        }
        let mut seen: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
        let mut next = Vec::new();
        for (p, q, r) in frontier {
            if r.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..n {
                let ip = dot(&r, j);
                for plus in [true, false] {
                    let (mut p2, mut q2) = (p.clone(), q.clone());
                    if plus {
                        if ip >= 0 || q[j] > 0 {
                            continue;
                        }
                        p2[j] += 1;
                    } else {
                        if ip <= 0 || p[j] > 0 {
                            continue;
                        }
                        q2[j] += 1;
                    }
                    if found.iter().any(|f| conformally_below(f, &p2, &q2)) {
                        continue;
                    }
                    if !seen.insert((p2.clone(), q2.clone())) {
                        continue;
                    }
                    let sign = if plus { 1 } else { -1 };
                    let r2: Vec<i64> = (0..d).map(|i| r[i] + sign * cfg.column(j)[i]).collect();
                    next.push((p2, q2, r2));
                    explored += 1;
                    if explored > SEARCH_LIMIT {
                        return Err(Error::OutOfRange);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Vec<i64>> = found
        .iter()
        .flat_map(|g| [g.clone(), g.iter().map(|x| -x).collect()])
        .collect();
    all.sort();
    all.dedup();
    Ok(all)
}

impl Configuration {
    /// The Graver basis, computed once.
    pub fn graver(&self) -> Result<&[Vec<i64>]> {
        if let Some(g) = self.graver.get() {
            return Ok(g);
        }
        let g = graver_basis(self)?;
        Ok(self.graver.get_or_init(|| g))
    }
}
