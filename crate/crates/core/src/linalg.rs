//! Linear algebra over an exact field: echelon forms, kernels, solving.

use crate::scalar::Scalar;

pub fn dot<K: Scalar>(a: &[K], b: &[K]) -> K {
    a.iter()
        .zip(b)
        .fold(K::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<K: Scalar>(rows: &[Vec<K>], ncols: usize) -> (Vec<Vec<K>>, Vec<usize>) {
    let mut m: Vec<Vec<K>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = K::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let t = m[r][k].clone() * f.clone();
                    m[i][k] = m[i][k].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<K: Scalar>(rows: &[Vec<K>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{ x : rows * x = 0 }`.
pub fn nullspace<K: Scalar>(rows: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![K::zero(); ncols];
            v[f] = K::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `rows * x = rhs`, if one exists.
pub fn solve<K: Scalar>(rows: &[Vec<K>], rhs: &[K], ncols: usize) -> Option<Vec<K>> {
    let aug: Vec<Vec<K>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![K::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Whether `v` lies in the linear span of `generators`.
pub fn in_span<K: Scalar>(generators: &[Vec<K>], v: &[K]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let dim = v.len();
    let cols: Vec<Vec<K>> = (0..dim)
        .map(|i| generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    solve(&cols, v, generators.len()).is_some()
}

/// Canonical representative of `p + span(directions)`: the point whose
/// coordinates vanish at the pivot columns of the reduced basis.
pub fn affine_canonical<K: Scalar>(point: &[K], directions: &[Vec<K>]) -> Vec<K> {
    let dim = point.len();
    let (basis, pivots) = rref(directions, dim);
    let mut p = point.to_vec();
    for (row, &c) in basis.iter().zip(&pivots) {
        let f = p[c].clone();
        if !f.is_zero() {
            for k in 0..dim {
                p[k] = p[k].clone() - f.clone() * row[k].clone();
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_i64(x)).collect()
    }

    #[test]
    fn nullspace_of_example_matrix() {
        let rows = vec![qv(&[1, 1, 1, 1]), qv(&[0, 0, 1, 2]), qv(&[0, 1, 1, 0])];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
        assert_eq!(rank(&rows, 4), 3);
    }

    #[test]
    fn solve_and_span() {
        let rows = vec![qv(&[1, 2]), qv(&[2, 4])];
        assert!(solve(&rows, &qv(&[1, 3]), 2).is_none());
        let x = solve(&rows, &qv(&[3, 6]), 2).unwrap();
        assert_eq!(dot(&rows[0], &x), BigRational::from_i64(3));
        assert!(in_span(&[qv(&[1, 1, 0])], &qv(&[2, 2, 0])));
        assert!(!in_span(&[qv(&[1, 1, 0])], &qv(&[2, 1, 0])));
        assert!(in_span::<BigRational>(&[], &qv(&[0, 0])));
    }

    #[test]
    fn affine_canonical_is_coset_invariant() {
        let dirs = vec![qv(&[1, 1, 0])];
        let a = affine_canonical(&qv(&[3, 1, 2]), &dirs);
        let b = affine_canonical(&qv(&[5, 3, 2]), &dirs);
        assert_eq!(a, b);
        assert_ne!(a, affine_canonical(&qv(&[3, 2, 2]), &dirs));
    }
}
