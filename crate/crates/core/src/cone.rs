//! Facets and faces of the cone spanned by the columns of `A`.
//!
//! Facets are found by brute force over `(d-1)`-subsets of columns, which is
//! fine for the handful of columns this crate is meant for. A face is named
//! by the set of columns it contains; for a pointed cone this determines it.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{homogeneity_witness, IntMatrix, LatticeBasis};
use crate::linalg;
use crate::scalar::Scalar;

/// A primitive integral support function of a facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportFunction {
    /// `F(x) = f . x`.
    pub f: Vec<BigRational>,
    /// Columns on which `F` vanishes; these span the facet.
    pub zero_columns: Vec<usize>,
    /// `F(a_j)` for every column.
    pub values: Vec<BigInt>,
}

impl SupportFunction {
    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        linalg::dot(&self.f, x)
    }

    pub fn eval_int(&self, x: &[BigInt]) -> BigRational {
        self.f
            .iter()
            .zip(x)
            .map(|(f, x)| f * BigRational::from_bigint(x))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// A face of the cone, named by its columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub columns: Vec<usize>,
    pub dim: usize,
    /// Indices (into the facet list) of the facets containing this face.
    pub facets: Vec<usize>,
}

impl Face {
    pub fn contains_column(&self, j: usize) -> bool {
        self.columns.binary_search(&j).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.columns.iter().all(|j| other.contains_column(*j))
    }

    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|j| !self.contains_column(*j)).collect()
    }

    /// Label with 1-based column indices, e.g. `{1,4}`.
    pub fn label(&self) -> String {
        let cols: Vec<String> = self.columns.iter().map(|j| (j + 1).to_string()).collect();
        format!("{{{}}}", cols.join(","))
    }
}

/// All faces, ordered by dimension and then by column set.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    /// `containment[i][j]` is true when face `i` is contained in face `j`.
    pub containment: Vec<Vec<bool>>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, columns: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.columns == columns)
    }

    pub fn whole_cone(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn is_whole_cone(&self, face: &Face) -> bool {
        face.facets.is_empty()
    }

    /// Faces strictly contained in face `i`.
    pub fn strict_subfaces(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&k| k != i && self.containment[k][i])
    }
}

fn column_matrix(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    a.columns()
        .iter()
        .map(|c| c.iter().map(BigRational::from_bigint).collect())
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rescale `f` so that it takes integer values on `za` with gcd one.
fn primitive_on(f: &[BigRational], za: &LatticeBasis) -> Vec<BigRational> {
    let values: Vec<BigRational> = za
        .vectors()
        .iter()
        .map(|b| {
            f.iter()
                .zip(b)
                .map(|(x, y)| x * BigRational::from_bigint(y))
                .fold(BigRational::zero(), |a, c| a + c)
        })
        .collect();
    let den = values.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let num = values
        .iter()
        .fold(BigInt::zero(), |g, v| g.gcd(&(v.numer() * (&den / v.denom()))));
    let scale = BigRational::new(num, den);
    f.iter().map(|x| x / &scale).collect()
}

/// The support functions of all facets, ordered by their zero columns.
pub fn facets(a: &IntMatrix) -> Result<Vec<SupportFunction>> {
    let d = a.rows();
    let n = a.cols();
    if a.rank() < d {
        return Err(Error::NotFullDim);
    }
    homogeneity_witness(a)?;
    let cols = column_matrix(a);
    let za = LatticeBasis::from_generators(d, &a.columns());
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for sub in subsets(n, d - 1) {
        let rows: Vec<Vec<BigRational>> = sub.iter().map(|&j| cols[j].clone()).collect();
        let normal = linalg::nullspace(&rows, d);
        if normal.len() != 1 {
            continue;
        }
        let mut f = normal.into_iter().next().unwrap();
        let vals: Vec<BigRational> = cols.iter().map(|c| linalg::dot(&f, c)).collect();
        if vals.iter().any(|v| v.is_positive()) && vals.iter().any(|v| v.is_negative()) {
            continue;
        }
        if vals.iter().any(|v| v.is_negative()) {
            f = f.iter().map(|x| -x).collect();
        }
        let zero_columns: Vec<usize> = (0..n).filter(|&j| vals[j].is_zero()).collect();
        if !seen.insert(zero_columns.clone()) {
            continue;
        }
        let f = primitive_on(&f, &za);
        let values = cols.iter().map(|c| linalg::dot(&f, c).to_integer()).collect();
        out.push(SupportFunction {
            f,
            zero_columns,
            values,
        });
    }
    out.sort_by(|x, y| x.zero_columns.cmp(&y.zero_columns));
    Ok(out)
}

/// All faces, obtained by intersecting facets.
pub fn face_lattice(a: &IntMatrix, facets: &[SupportFunction]) -> FaceLattice {
    let n = a.cols();
    let cols = column_matrix(a);
    let closure = |columns: &BTreeSet<usize>| -> Vec<usize> {
        (0..facets.len())
            .filter(|&s| columns.iter().all(|j| facets[s].values[*j].is_zero()))
            .collect()
    };
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let whole: BTreeSet<usize> = (0..n).collect();
    let mut stack = vec![whole];
    let mut faces = Vec::new();
    while let Some(columns) = stack.pop() {
        let key: Vec<usize> = columns.iter().copied().collect();
        if !found.insert(key.clone()) {
            continue;
        }
        let incident = closure(&columns);
        let spanning: Vec<Vec<BigRational>> = key.iter().map(|&j| cols[j].clone()).collect();
        let dim = linalg::rank(&spanning, a.rows());
        for (s, f) in facets.iter().enumerate() {
            if incident.contains(&s) {
                continue;
            }
            let next: BTreeSet<usize> = columns.iter().copied().filter(|&j| f.values[j].is_zero()).collect();
            stack.push(next);
        }
        faces.push(Face {
            columns: key,
            dim,
            facets: incident,
        });
    }
    faces.sort_by(|x, y| (x.dim, &x.columns).cmp(&(y.dim, &y.columns)));
    let containment = faces
        .iter()
        .map(|f| faces.iter().map(|g| f.is_subface_of(g)).collect())
        .collect();
    FaceLattice { faces, containment }
}

/// `g = sum of F_s over the facets s containing the face`: zero on the
/// face's columns and a positive integer on every other column.
pub fn positive_functional(face: &Face, facets: &[SupportFunction]) -> Result<Vec<BigRational>> {
    if face.facets.is_empty() {
        return Err(Error::WholeCone);
    }
    let d = facets[0].f.len();
    let mut g = vec![BigRational::zero(); d];
    for &s in &face.facets {
        for (x, y) in g.iter_mut().zip(&facets[s].f) {
            *x += y;
        }
    }
    Ok(g)
}
