//! Monomial ideals, `M_χ = ⟨∂^u : Au ∈ χ + NA⟩`, and standard pairs.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::configuration::Configuration;
use crate::error::{check_dim, Error, Result};
use crate::lattice::small_entry;

use super::graver::conformally_below;
use super::groebner::divides;

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    pub n: usize,
    pub gens: Vec<Vec<u32>>,
}

/// `(u, τ)`: the monomials `∂^{u+v}`, `v ∈ N^τ`, avoid the ideal and `τ`
/// cannot be enlarged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardPair {
    pub u: Vec<u32>,
    pub tau: Vec<usize>,
}

impl MonomialIdeal {
    /// Build from any generating set; non-minimal generators are dropped.
    pub fn new(n: usize, gens: Vec<Vec<u32>>) -> Self {
        let mut gens = gens;
        gens.sort_by_key(|g| (g.iter().sum::<u32>(), g.clone()));
        gens.dedup();
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|m| divides(m, &g)) {
                minimal.push(g);
            }
        }
        minimal.sort();
        MonomialIdeal { n, gens: minimal }
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    /// Some generator divides `u + v` for a `v` supported on `free`.
    fn meets(&self, u: &[u32], free: &[bool]) -> bool {
        self.gens.iter().any(|g| (0..self.n).all(|i| free[i] || g[i] <= u[i]))
    }

    /// Standard pairs whose `τ` is one of `candidates`.
    ///
    /// For a candidate `τ`, a pair `(u, τ)` needs `u` supported off `τ`, no
    /// generator below `u` off `τ`, and for each `j ∉ τ` some generator
    /// below `u` off `τ ∪ {j}`. The last condition bounds `u_j` by the
    /// largest `j`-exponent of a generator minus one.
    pub fn standard_pairs(&self, candidates: &[Vec<usize>]) -> Vec<StandardPair> {
        if self.is_unit() {
            return Vec::new();
        }
        let n = self.n;
        let caps: Vec<u32> = (0..n)
            .map(|j| self.gens.iter().map(|g| g[j]).max().unwrap_or(0))
            .collect();
        let mut out = Vec::new();
        for tau in candidates {
            let mut free = vec![false; n];
            for &j in tau {
                free[j] = true;
            }
            let off: Vec<usize> = (0..n).filter(|&j| !free[j]).collect();
            if off.iter().any(|&j| caps[j] == 0) {
                // some j ∉ τ never appears in a generator: condition (3)
                // fails for j at every u
                continue;
            }
            let mut u = vec![0u32; n];
            loop {
                if !self.meets(&u, &free)
                    && off.iter().all(|&j| {
                        free[j] = true;
                        let ok = self.meets(&u, &free);
                        free[j] = false;
                        ok
                    })
                {
                    out.push(StandardPair {
                        u: u.clone(),
                        tau: tau.clone(),
                    });
                }
                let mut k = 0;
                while k < off.len() {
                    let j = off[k];
                    u[j] += 1;
                    if u[j] < caps[j] {
                        break;
                    }
                    u[j] = 0;
                    k += 1;
                }
                if k == off.len() {
                    break;
                }
            }
        }
        out.sort();
        out
    }
}

/// Limit on the number of partial solutions explored by [`m_chi`].
const SEARCH_LIMIT: usize = 2_000_000;

/// Whether `(u, v)` lies above a nonzero `(p, q)` with `Ap = Aq`. With
/// disjoint supports this holds exactly when it lies conformally above a
/// Graver basis element, since every kernel vector is a conformal sum of
/// those.
fn dominates_relation(graver: &[Vec<i64>], u: &[i64], v: &[i64]) -> bool {
    graver.iter().any(|g| conformally_below(g, u, v))
}

/// Minimal generators of `M_χ`.
///
/// The pairs `(u, v) ∈ N^{2n}` with `A(u − v) = χ` are searched with the
/// Contejean–Devie completion strategy: a coordinate is increased only if
/// that moves `A(u − v) − χ` towards zero (negative inner product). Every
/// minimal solution is reached this way. Branches are cut when `u` already
/// lies above a found generator or when `(u, v)` lies above a nonzero
/// solution of `Ap = Aq`, which a minimal solution never does.
pub fn m_chi(cfg: &Configuration, chi: &[BigRational]) -> Result<MonomialIdeal> {
    check_dim(cfg.d(), chi.len())?;
    let Some(chi_int) = cfg
        .za()
        .member(chi)
        .map(|_| chi.iter().map(|x| x.to_integer()).collect::<Vec<BigInt>>())
    else {
        return Err(Error::ChiNotInLattice(format!("{chi:?}")));
    };
    let chi: Vec<i64> = chi_int.iter().map(small_entry).collect::<Result<_>>()?;
    let n = cfg.n();
    let d = cfg.d();
    let dot = |r: &[i64], j: usize| -> i64 { r.iter().zip(cfg.column(j)).map(|(x, y)| x * y).sum() };

    let mut found: Vec<Vec<i64>> = Vec::new();
    let start_residual: Vec<i64> = chi.iter().map(|x| -x).collect();
    let mut frontier: Vec<(Vec<i64>, Vec<i64>, Vec<i64>)> = vec![(vec![0; n], vec![0; n], start_residual)];
    let mut explored = 0usize;
    let graver = cfg.graver()?;
    while !frontier.is_empty() {
        let mut next_level: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
        let mut next = Vec::new();
        // solutions on this level first, so that pruning sees them
        for (u, _, r) in &frontier {
            if r.iter().all(|&x| x == 0) && !found.iter().any(|g| g.iter().zip(u).all(|(a, b)| a <= b)) {
                found.push(u.clone());
            }
        }
        for (u, v, r) in frontier {
            if r.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..n {
                let ip = dot(&r, j);
                for plus in [true, false] {
                    if (plus && ip >= 0) || (!plus && ip <= 0) {
                        continue;
                    }
                    let (mut u2, mut v2) = (u.clone(), v.clone());
                    if plus {
                        if v2[j] > 0 {
                            continue;
                        }
                        u2[j] += 1;
                    } else {
                        if u2[j] > 0 {
                            continue;
                        }
                        v2[j] += 1;
                    }
                    if found.iter().any(|g| g.iter().zip(&u2).all(|(a, b)| a <= b)) {
                        continue;
                    }
                    if next_level.contains(&(u2.clone(), v2.clone())) {
                        continue;
                    }
                    if dominates_relation(graver, &u2, &v2) {
                        continue;
                    }
                    let key = (u2.clone(), v2.clone());
                    let sign = if plus { 1 } else { -1 };
                    let r2: Vec<i64> = (0..d).map(|i| r[i] + sign * cfg.column(j)[i]).collect();
                    next_level.insert(key);
                    next.push((u2, v2, r2));
                    explored += 1;
                    if explored > SEARCH_LIMIT {
                        return Err(Error::OutOfRange);
                    }
                }
            }
        }
        frontier = next;
    }
    let gens = found
        .into_iter()
        .map(|u| u.into_iter().map(|x| x as u32).collect())
        .collect();
    Ok(MonomialIdeal::new(n, gens))
}

impl Configuration {
    /// Proper faces of the cone as column sets: the candidates for the
    /// second entry of a standard pair of `M_χ`.
    pub fn proper_face_columns(&self) -> Vec<Vec<usize>> {
        self.faces()
            .faces
            .iter()
            .filter(|f| !f.facets.is_empty())
            .map(|f| f.columns.clone())
            .collect()
    }
}
