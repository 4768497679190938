//! Buchberger's algorithm specialised to pure binomials `∂^a − ∂^b`.
//!
//! S-polynomials and reductions of pure binomials are again pure binomials,
//! so an element is just an ordered pair of exponent vectors and reduction
//! acts on each side independently.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::Binomial;

/// Degree reverse lexicographic order in which `lowest` is the smallest
/// variable; the remaining variables keep their natural order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub lowest: usize,
}

impl TermOrder {
    pub fn new(lowest: usize) -> Self {
        TermOrder { lowest }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        if da != db {
            return da.cmp(&db);
        }
        let n = a.len();
        let tail = std::iter::once(self.lowest).chain((0..n).rev().filter(|&k| k != self.lowest));
        for k in tail {
            if a[k] != b[k] {
                // the monomial with the smaller exponent in the lowest
                // differing variable is the larger one
                return b[k].cmp(&a[k]);
            }
        }
        Ordering::Equal
    }

    /// Orient so that `plus` is the leading monomial; `None` for zero.
    pub fn orient(&self, b: Binomial) -> Option<Binomial> {
        match self.cmp(&b.plus, &b.minus) {
            Ordering::Equal => None,
            Ordering::Greater => Some(b),
            Ordering::Less => Some(Binomial {
                plus: b.minus,
                minus: b.plus,
            }),
        }
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Normal form of a monomial modulo the binomials in `basis`.
pub fn normal_form(m: &[u32], basis: &[Binomial]) -> Vec<u32> {
    let mut m = m.to_vec();
    'outer: loop {
        for g in basis {
            if divides(&g.plus, &m) {
                for k in 0..m.len() {
                    m[k] = m[k] - g.plus[k] + g.minus[k];
                }
                continue 'outer;
            }
        }
        return m;
    }
}

fn reduce(b: &Binomial, basis: &[Binomial], order: &TermOrder) -> Option<Binomial> {
    order.orient(Binomial {
        plus: normal_form(&b.plus, basis),
        minus: normal_form(&b.minus, basis),
    })
}

fn s_binomial(f: &Binomial, g: &Binomial) -> Binomial {
    let l = lcm(&f.plus, &g.plus);
    let shift =
        |m: &[u32], lead: &[u32]| -> Vec<u32> { m.iter().zip(lead).zip(&l).map(|((x, y), z)| x + z - y).collect() };
    Binomial {
        plus: shift(&f.minus, &f.plus),
        minus: shift(&g.minus, &g.plus),
    }
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// The reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Binomial], order: &TermOrder) -> Vec<Binomial> {
    let mut basis: Vec<Binomial> = Vec::new();
    for g in gens {
        if let Some(r) = reduce(g, &basis, order) {
            basis.push(r);
        }
    }
    // pending pairs, treated by increasing degree of their lcm
    let key = |basis: &[Binomial], i: usize, j: usize| -> (u32, usize, usize) {
        let (i, j) = (i.min(j), i.max(j));
        (lcm(&basis[i].plus, &basis[j].plus).iter().sum(), i, j)
    };
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert(key(&basis, i, j));
        }
    }
    while let Some((_, i, j)) = pending.pop_first() {
        if coprime(&basis[i].plus, &basis[j].plus) {
            continue;
        }
        // chain criterion: some k whose leading term divides the lcm and
        // whose pairs with i and j have already been treated
        let l = lcm(&basis[i].plus, &basis[j].plus);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].plus, &l)
                && !pending.contains(&key(&basis, i, k))
                && !pending.contains(&key(&basis, j, k))
        });
        if chained {
            continue;
        }
        let s = s_binomial(&basis[i], &basis[j]);
        if let Some(r) = reduce(&s, &basis, order) {
            let k = basis.len();
            basis.push(r);
            for i in 0..k {
                pending.insert(key(&basis, i, k));
            }
        }
    }
    reduce_basis(basis, order)
}

/// Minimalise and inter-reduce a Gröbner basis, then sort it.
pub fn reduce_basis(mut basis: Vec<Binomial>, order: &TermOrder) -> Vec<Binomial> {
    basis.sort_by(|a, b| order.cmp(&a.plus, &b.plus).then_with(|| a.minus.cmp(&b.minus)));
    let mut minimal: Vec<Binomial> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(&h.plus, &g.plus)) {
            minimal.push(g);
        }
    }
    let snapshot = minimal.clone();
    let mut out: Vec<Binomial> = minimal
        .into_iter()
        .map(|g| Binomial {
            minus: normal_form(&g.minus, &snapshot),
            plus: g.plus,
        })
        .collect();
    out.sort_by(|a, b| order.cmp(&a.plus, &b.plus).then_with(|| a.minus.cmp(&b.minus)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(plus: &[u32], minus: &[u32]) -> Binomial {
        Binomial {
            plus: plus.to_vec(),
            minus: minus.to_vec(),
        }
    }

    #[test]
    fn order_prefers_small_lowest_exponent() {
        let o = TermOrder::new(2);
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 1, 1], &[2, 0, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn twisted_cubic() {
        // kernel of (1 1 1 1; 0 1 2 3)
        let gens = vec![
            b(&[1, 0, 1, 0], &[0, 2, 0, 0]),
            b(&[0, 1, 0, 1], &[0, 0, 2, 0]),
            b(&[1, 0, 0, 1], &[0, 1, 1, 0]),
        ];
        let g = groebner_basis(&gens, &TermOrder::new(3));
        assert_eq!(g.len(), 3);
        for x in &g {
            for y in &g {
                let s = s_binomial(x, y);
                assert_eq!(normal_form(&s.plus, &g), normal_form(&s.minus, &g));
            }
        }
    }
}
