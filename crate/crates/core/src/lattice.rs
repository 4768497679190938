//! Integer matrices and lattices.
//!
//! Everything here is exact. Lattices are stored by a column Hermite basis
//! (lower echelon, positive pivots, entries left of a pivot reduced into
//! `[0, pivot)`), which makes the basis a canonical name for the lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::scalar::{fract, Scalar};

/// A dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// The matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(BigInt::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn mul_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from_bigint(self.get(i, j)) * &v[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(BigRational::from_bigint).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.to_rational_rows(), self.cols)
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn det(&self) -> Result<BigInt> {
        check_dim(self.rows, self.cols)?;
        Ok(det_bareiss(self.to_rows()))
    }

    /// Entries as `i64` columns, for the enumeration routines.
    pub fn small_columns(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| small_entry(self.get(i, j)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Enumeration routines work in `i64`; entries beyond this bound are
/// rejected so that sums of a few thousand terms cannot overflow.
pub const SMALL_BOUND: i64 = 1 << 40;

pub(crate) fn small_entry(x: &BigInt) -> Result<i64> {
    match x.to_i64() {
        Some(v) if v.abs() <= SMALL_BOUND => Ok(v),
        _ => Err(Error::OutOfRange),
    }
}

fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Result of [`hermite_normal_form`]: `h = m * u` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Row index of the pivot of each of the first `rank` columns of `h`.
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn col_combine(m: &mut IntMatrix, k: usize, c: usize, coeffs: [&BigInt; 4]) {
    // (col_k, col_c) <- (a col_k + b col_c, e col_k + f col_c)
    let [a, b, e, f] = coeffs;
    for i in 0..m.rows {
        let xk = m.get(i, k).clone();
        let xc = m.get(i, c).clone();
        m.set(i, k, a * &xk + b * &xc);
        m.set(i, c, e * &xk + f * &xc);
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, q: &BigInt, source: usize) {
    // col_target -= q * col_source
    for i in 0..m.rows {
        let v = m.get(i, target) - q * m.get(i, source);
        m.set(i, target, v);
    }
}

/// Column Hermite normal form: `H = M U`, `U` unimodular, and the columns
/// of `H` generate the same lattice as the columns of `M`.
pub fn hermite_normal_form(m: &IntMatrix) -> Hermite {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..h.rows {
        if k == h.cols {
            break;
        }
        for c in k + 1..h.cols {
            if h.get(i, c).is_zero() {
                continue;
            }
            let a = h.get(i, k).clone();
            let b = h.get(i, c).clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let e = -(&b / &g);
            let f = &a / &g;
            col_combine(&mut h, k, c, [&x, &y, &e, &f]);
            col_combine(&mut u, k, c, [&x, &y, &e, &f]);
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            let one = BigInt::one();
            let zero = BigInt::zero();
            let neg = -BigInt::one();
            col_combine(&mut h, k, k, [&neg, &zero, &neg, &zero]);
            col_combine(&mut u, k, k, [&neg, &zero, &neg, &zero]);
            let _ = one;
        }
        let p = h.get(i, k).clone();
        for c in 0..k {
            let q = h.get(i, c).div_floor(&p);
            if !q.is_zero() {
                col_axpy(&mut h, c, &q, k);
                col_axpy(&mut u, c, &q, k);
            }
        }
        pivots.push(i);
        k += 1;
    }
    Hermite { h, u, pivots }
}

/// Elementary divisors of the Smith normal form (the nonzero diagonal).
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut cur = m.clone();
    loop {
        let hc = hermite_normal_form(&cur);
        let r = hc.rank();
        // keep only the rank columns and alternate with the transpose
        let mut next = IntMatrix::zeros(r, cur.rows);
        for i in 0..cur.rows {
            for j in 0..r {
                next.set(j, i, hc.h.get(i, j).clone());
            }
        }
        let diagonal = (0..next.rows).all(|i| (0..next.cols).all(|j| i == j || next.get(i, j).is_zero()));
        cur = next;
        if diagonal {
            break;
        }
    }
    let mut d: Vec<BigInt> = (0..cur.rows.min(cur.cols))
        .map(|i| cur.get(i, i).abs())
        .filter(|x| !x.is_zero())
        .collect();
    // enforce the divisibility chain
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Integer solutions of `m x = rhs`: a particular solution and a basis of
/// the integer kernel.
pub fn solve_integer(m: &IntMatrix, rhs: &[BigRational]) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    if rhs.iter().any(|x| !x.is_integer()) {
        return None;
    }
    let rhs: Vec<BigInt> = rhs.iter().map(|x| x.to_integer()).collect();
    let herm = hermite_normal_form(m);
    let r = herm.rank();
    let mut y = vec![BigInt::zero(); m.cols];
    let mut residual = rhs.clone();
    for (k, &p) in herm.pivots.iter().enumerate() {
        let piv = herm.h.get(p, k);
        let (q, rem) = residual[p].div_rem(piv);
        if !rem.is_zero() {
            return None;
        }
        for i in 0..m.rows {
            let v = &residual[i] - &q * herm.h.get(i, k);
            residual[i] = v;
        }
        y[k] = q;
    }
    if !residual.iter().all(Zero::is_zero) {
        return None;
    }
    let x = herm.u.mul_vec(&y);
    let kernel = (r..m.cols).map(|j| herm.u.column(j)).collect();
    Some((x, kernel))
}

/// A lattice in `Z^dim`, stored by its canonical Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.basis)
    }
}

impl LatticeBasis {
    pub fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        if gens.is_empty() {
            return Self::zero(dim);
        }
        let herm = hermite_normal_form(&IntMatrix::from_columns(dim, gens));
        let basis = (0..herm.rank()).map(|k| herm.h.column(k)).collect();
        LatticeBasis {
            dim,
            basis,
            pivots: herm.pivots,
        }
    }

    pub fn zero(dim: usize) -> Self {
        LatticeBasis {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_generators(dim, &IntMatrix::identity(dim).columns())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn as_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis)
    }

    fn rational_basis(&self) -> Vec<Vec<BigRational>> {
        self.basis
            .iter()
            .map(|b| b.iter().map(BigRational::from_bigint).collect())
            .collect()
    }

    /// Integer coordinates of `v` in the basis, or `None` if `v` is not in
    /// the lattice.
    pub fn member(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        if v.len() != self.dim || v.iter().any(|x| !x.is_integer()) {
            return None;
        }
        let v: Vec<BigInt> = v.iter().map(|x| x.to_integer()).collect();
        self.member_int(&v)
    }

    pub fn member_int(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.dim {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, rem) = residual[p].div_rem(&b[p]);
            if !rem.is_zero() {
                return None;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                *r -= &q * x;
            }
            coords.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, other: &LatticeBasis) -> bool {
        other.basis.iter().all(|b| self.member_int(b).is_some())
    }

    /// Rational coordinates of `v` in the basis, if `v` lies in the span.
    pub fn rational_coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        if v.len() != self.dim {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let q = &residual[p] / BigRational::from_bigint(&b[p]);
            for (r, x) in residual.iter_mut().zip(b) {
                *r -= &q * BigRational::from_bigint(x);
            }
            coords.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn span_contains(&self, v: &[BigRational]) -> bool {
        self.rational_coordinates(v).is_some()
    }

    /// The representative of `v + L` whose coordinates in the Hermite basis
    /// lie in `[0, 1)`. Requires `v` in the rational span of the lattice.
    pub fn canonical_residue(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let coords = self.rational_coordinates(v)?;
        let mut out = vec![BigRational::zero(); self.dim];
        for (c, b) in coords.iter().zip(self.rational_basis()) {
            let f = fract(c);
            if f.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&b) {
                *o += &f * x;
            }
        }
        Some(out)
    }

    /// Canonical representative of `v` modulo the lattice for any integer
    /// vector: pivot entries are reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let q = r[p].div_floor(&b[p]);
            if !q.is_zero() {
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &q * y;
                }
            }
        }
        r
    }

    pub(crate) fn small(&self) -> Result<SmallLattice> {
        Ok(SmallLattice {
            basis: self
                .basis
                .iter()
                .map(|b| b.iter().map(small_entry).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
            pivots: self.pivots.clone(),
        })
    }
}

/// `i64` copy of a lattice basis used inside enumeration loops.
#[derive(Clone, Debug)]
pub(crate) struct SmallLattice {
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl SmallLattice {
    pub(crate) fn reduce_in_place(&self, r: &mut [i64]) {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let q = r[p].div_euclid(b[p]);
            if q != 0 {
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= q * y;
                }
            }
        }
    }
}

/// Coset representatives of `big / small`.
#[derive(Clone, Debug)]
pub struct QuotientResidues {
    pub big: LatticeBasis,
    pub small: LatticeBasis,
    /// Canonical residues modulo `small`, sorted.
    pub representatives: Vec<Vec<BigRational>>,
    pub index: BigInt,
}

pub fn quotient_representatives(big: &LatticeBasis, small: &LatticeBasis) -> Result<QuotientResidues> {
    check_dim(big.dim(), small.dim())?;
    if !big.contains(small) {
        return Err(Error::NotSublattice);
    }
    if big.rank() != small.rank() {
        return Err(Error::InfiniteIndex);
    }
    let r = big.rank();
    let coords: Vec<Vec<BigInt>> = small
        .vectors()
        .iter()
        .map(|b| big.member_int(b).expect("checked containment"))
        .collect();
    let c = IntMatrix::from_columns(r, &coords);
    let index: BigInt = smith_diagonal(&c).iter().product();

    // Coset boxes come from the diagonal of the Hermite form of `c`.
    let herm = hermite_normal_form(&c);
    let diag: Vec<BigInt> = (0..r).map(|k| herm.h.get(herm.pivots[k], k).clone()).collect();
    let box_product: BigInt = diag.iter().product();
    if box_product != index {
        return Err(Error::Internal(format!(
            "Hermite diagonal product {box_product} differs from Smith index {index}"
        )));
    }
    let sizes: Vec<u64> = diag
        .iter()
        .map(|d| d.to_u64().ok_or(Error::OutOfRange))
        .collect::<Result<_>>()?;
    let mut reps = Vec::new();
    let mut x = vec![0u64; r];
    loop {
        let mut v = vec![BigRational::zero(); big.dim()];
        for (xk, b) in x.iter().zip(big.vectors()) {
            for (o, y) in v.iter_mut().zip(b) {
                *o += BigRational::from_integer(BigInt::from(*xk) * y);
            }
        }
        reps.push(small.canonical_residue(&v).expect("same rational span"));
        // odometer
        let mut k = 0;
        while k < r {
            x[k] += 1;
            if x[k] < sizes[k] {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
    }
    reps.sort();
    reps.dedup();
    if BigInt::from(reps.len()) != index {
        return Err(Error::Internal("quotient representatives collided".into()));
    }
    Ok(QuotientResidues {
        big: big.clone(),
        small: small.clone(),
        representatives: reps,
        index,
    })
}

/// The saturated lattice `{ u in Z^n : A u = 0 }`.
pub fn kernel_lattice(a: &IntMatrix) -> LatticeBasis {
    let herm = hermite_normal_form(a);
    let gens: Vec<Vec<BigInt>> = (herm.rank()..a.cols()).map(|j| herm.u.column(j)).collect();
    LatticeBasis::from_generators(a.cols(), &gens)
}

/// A rational row vector `h` with `h . a_j = 1` for every column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityWitness {
    pub h: Vec<BigRational>,
}

impl HomogeneityWitness {
    pub fn degree(&self, v: &[BigRational]) -> BigRational {
        linalg::dot(&self.h, v)
    }

    pub fn degree_int(&self, v: &[BigInt]) -> BigRational {
        self.h
            .iter()
            .zip(v)
            .map(|(h, x)| h * BigRational::from_bigint(x))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

pub fn homogeneity_witness(a: &IntMatrix) -> Result<HomogeneityWitness> {
    let at = a.transpose().to_rational_rows();
    let ones = vec![BigRational::one(); a.cols()];
    linalg::solve(&at, &ones, a.rows())
        .map(|h| HomogeneityWitness { h })
        .ok_or(Error::NotHomogeneous)
}

pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(BigRational::from_bigint).collect()
}

pub fn from_i64s(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rational_i64s(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_i64(x)).collect()
}

/// Integer vector if every entry is integral.
pub fn integral(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}
