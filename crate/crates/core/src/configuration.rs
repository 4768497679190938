//! A validated matrix `A` together with everything derived from it.
//!
//! Construction checks the standing assumptions (full row rank, columns on
//! a hyperplane off the origin). Derived data that is expensive or only
//! sometimes needed is computed lazily and cached; every cache is safe to
//! share between threads.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cone::{self, Face, FaceLattice, SupportFunction};
use crate::error::{check_dim, Error, Result};
use crate::lattice::{
    self, homogeneity_witness, kernel_lattice, quotient_representatives, small_entry, HomogeneityWitness, IntMatrix,
    LatticeBasis, QuotientResidues, SmallLattice,
};
use crate::linalg;
use crate::toric::ToricIdeal;

/// Per-face lattice data.
#[derive(Debug)]
pub struct FaceData {
    /// `Z(A ∩ τ)`.
    pub small: LatticeBasis,
    /// `ZA ∩ Q(A ∩ τ)`.
    pub big: LatticeBasis,
    /// Integer rows spanning the annihilator of `Q(A ∩ τ)`.
    pub annihilator: Vec<Vec<BigInt>>,
    pub residues: QuotientResidues,
    /// The positive functional of the face, `None` for the whole cone.
    pub functional: Option<Vec<BigRational>>,
    /// Its values on the columns.
    pub grading: Option<Vec<i64>>,
    small_i64: SmallLattice,
    levels: RwLock<Vec<HashMap<Vec<i64>, u32>>>,
}

/// The matrix `A` and its cone, lattices and caches.
#[derive(Debug)]
pub struct Configuration {
    a: IntMatrix,
    columns: Vec<Vec<i64>>,
    h: HomogeneityWitness,
    za: LatticeBasis,
    kernel: LatticeBasis,
    facets: Vec<SupportFunction>,
    faces: FaceLattice,
    face_data: Vec<OnceLock<FaceData>>,
    pub(crate) toric: OnceLock<ToricIdeal>,
    pub(crate) graver: OnceLock<Vec<Vec<i64>>>,
}

impl Configuration {
    pub fn new(a: IntMatrix) -> Result<Self> {
        if a.cols() < a.rows() || a.rank() < a.rows() {
            return Err(Error::NotFullDim);
        }
        let h = homogeneity_witness(&a)?;
        let columns = a.small_columns()?;
        let za = LatticeBasis::from_generators(a.rows(), &a.columns());
        let kernel = kernel_lattice(&a);
        let facets = cone::facets(&a)?;
        let faces = cone::face_lattice(&a, &facets);
        let face_data = (0..faces.len()).map(|_| OnceLock::new()).collect();
        Ok(Configuration {
            a,
            columns,
            h,
            za,
            kernel,
            facets,
            faces,
            face_data,
            toric: OnceLock::new(),
            graver: OnceLock::new(),
        })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows)?)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn d(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Column `j` as machine integers.
    pub fn column(&self, j: usize) -> &[i64] {
        &self.columns[j]
    }

    pub fn column_big(&self, j: usize) -> Vec<BigInt> {
        self.a.column(j)
    }

    pub fn column_rational(&self, j: usize) -> Vec<BigRational> {
        lattice::to_rational(&self.a.column(j))
    }

    pub fn homogeneity(&self) -> &HomogeneityWitness {
        &self.h
    }

    pub fn za(&self) -> &LatticeBasis {
        &self.za
    }

    pub fn kernel(&self) -> &LatticeBasis {
        &self.kernel
    }

    pub fn facets(&self) -> &[SupportFunction] {
        &self.facets
    }

    pub fn faces(&self) -> &FaceLattice {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces.faces[i]
    }

    /// `A u` for an integer vector `u`.
    pub fn apply(&self, u: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.d()];
        for (j, &uj) in u.iter().enumerate() {
            if uj != 0 {
                for (o, x) in out.iter_mut().zip(&self.columns[j]) {
                    *o += uj * x;
                }
            }
        }
        out
    }

    pub fn apply_big(&self, u: &[BigInt]) -> Vec<BigInt> {
        self.a.mul_vec(u)
    }

    pub fn apply_rational(&self, u: &[BigRational]) -> Vec<BigRational> {
        self.a.mul_rational(u)
    }

    pub fn check_parameter(&self, beta: &[BigRational]) -> Result<()> {
        check_dim(self.d(), beta.len())
    }

    /// Membership in `ZA`.
    pub fn in_za(&self, v: &[BigRational]) -> bool {
        self.za.member(v).is_some()
    }

    pub fn face_data(&self, i: usize) -> &FaceData {
        self.face_data[i].get_or_init(|| self.build_face_data(i))
    }

    fn build_face_data(&self, i: usize) -> FaceData {
        let d = self.d();
        let face = &self.faces.faces[i];
        let gens: Vec<Vec<BigInt>> = face.columns.iter().map(|&j| self.a.column(j)).collect();
        let small = LatticeBasis::from_generators(d, &gens);
        let span_rows: Vec<Vec<BigRational>> = gens.iter().map(|g| lattice::to_rational(g)).collect();
        let annihilator: Vec<Vec<BigInt>> = linalg::nullspace(&span_rows, d)
            .into_iter()
            .map(|v| integer_row(&v))
            .collect();
        let big = if annihilator.is_empty() {
            self.za.clone()
        } else {
            let n = IntMatrix::new(annihilator.clone()).expect("nonempty rows");
            let b = self.za.as_matrix();
            let nb = n.mul(&b).expect("dimensions agree");
            let ker = kernel_lattice(&nb);
            let gens: Vec<Vec<BigInt>> = ker.vectors().iter().map(|k| b.mul_vec(k)).collect();
            LatticeBasis::from_generators(d, &gens)
        };
        let residues = quotient_representatives(&big, &small).expect("Z(A∩τ) ⊆ ZA ∩ Q(A∩τ) of equal rank");
        let functional = cone::positive_functional(face, &self.facets).ok();
        let grading = functional.as_ref().map(|g| {
            (0..self.n())
                .map(|j| {
                    let v = linalg::dot(g, &self.column_rational(j));
                    v.to_integer().to_i64().expect("small grading")
                })
                .collect()
        });
        let small_i64 = small.small().expect("entries of A are small");
        FaceData {
            small,
            big,
            annihilator,
            residues,
            functional,
            grading,
            small_i64,
            levels: RwLock::new(Vec::new()),
        }
    }

    /// Decide `γ ∈ NA + Z(A ∩ τ)` for the face with index `face`.
    ///
    /// Sums of columns off the face are graded by the face's positive
    /// functional; each grade has finitely many classes modulo `Z(A ∩ τ)`,
    /// and these level sets are cached per face.
    pub fn in_na_mod_face(&self, face: usize, gamma: &[BigRational]) -> Result<bool> {
        self.check_parameter(gamma)?;
        let Some(g) = lattice::integral(gamma) else {
            return Ok(false);
        };
        if self.za.member_int(&g).is_none() {
            return Ok(false);
        }
        let data = self.face_data(face);
        let Some(functional) = &data.functional else {
            return Ok(true);
        };
        let level = linalg::dot(functional, gamma);
        if level.is_negative() {
            return Ok(false);
        }
        let level = level.to_integer().to_usize().ok_or(Error::OutOfRange)?;
        let mut key: Vec<i64> = g.iter().map(small_entry).collect::<Result<_>>()?;
        data.small_i64.reduce_in_place(&mut key);
        self.ensure_levels(face, level)?;
        let levels = data.levels.read().expect("level cache poisoned");
        Ok(levels[level].contains_key(&key))
    }

    /// Decide `γ ∈ NA`, returning some `u ∈ N^n` with `Au = γ`.
    pub fn in_na(&self, gamma: &[BigRational]) -> Result<Option<Vec<u64>>> {
        let origin = 0;
        debug_assert!(self.faces.faces[origin].columns.is_empty());
        if !self.in_na_mod_face(origin, gamma)? {
            return Ok(None);
        }
        let data = self.face_data(origin);
        let grading = data.grading.as_ref().expect("origin is a proper face");
        let g = lattice::integral(gamma).expect("checked integrality");
        let mut key: Vec<i64> = g.iter().map(small_entry).collect::<Result<_>>()?;
        let mut level = linalg::dot(data.functional.as_ref().unwrap(), gamma)
            .to_integer()
            .to_usize()
            .expect("checked range");
        let levels = data.levels.read().expect("level cache poisoned");
        let mut u = vec![0u64; self.n()];
        while level > 0 {
            let step = levels[level][&key];
            let j = (step - 1) as usize;
            u[j] += 1;
            for (k, x) in key.iter_mut().zip(&self.columns[j]) {
                *k -= x;
            }
            level -= grading[j] as usize;
        }
        Ok(Some(u))
    }

    fn ensure_levels(&self, face: usize, level: usize) -> Result<()> {
        let data = self.face_data(face);
        if data.levels.read().expect("level cache poisoned").len() > level {
            return Ok(());
        }
        const MAX_LEVEL: usize = 4096;
        if level > MAX_LEVEL {
            return Err(Error::OutOfRange);
        }
        let grading = data.grading.as_ref().expect("proper face");
        let off: Vec<usize> = (0..self.n()).filter(|&j| grading[j] > 0).collect();
        let mut levels = data.levels.write().expect("level cache poisoned");
        if levels.is_empty() {
            let mut zero = HashMap::new();
            zero.insert(vec![0i64; self.d()], 0u32);
            levels.push(zero);
        }
        while levels.len() <= level {
            let t = levels.len();
            let mut next: HashMap<Vec<i64>, u32> = HashMap::new();
            for &j in &off {
                let gj = grading[j] as usize;
                if gj > t {
                    continue;
                }
                for r in levels[t - gj].keys() {
                    let mut s: Vec<i64> = r.iter().zip(&self.columns[j]).map(|(x, y)| x + y).collect();
                    data.small_i64.reduce_in_place(&mut s);
                    next.entry(s).or_insert(j as u32 + 1);
                }
            }
            levels.push(next);
        }
        Ok(())
    }

    /// `h(v)`, the degree with respect to the homogeneity functional.
    pub fn degree(&self, v: &[BigRational]) -> BigRational {
        self.h.degree(v)
    }

    /// Whether `v` lies in the closed cone (all facet values nonnegative).
    pub fn in_cone(&self, v: &[BigRational]) -> bool {
        self.facets.iter().all(|s| !s.eval(v).is_negative())
    }

    pub fn facet_values(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.facets.iter().map(|s| s.eval(v)).collect()
    }

    /// The face cut out by the given facets.
    pub fn face_of_facets(&self, facets: &[usize]) -> Option<usize> {
        let columns: Vec<usize> = (0..self.n())
            .filter(|&j| facets.iter().all(|&s| self.facets[s].values[j].is_zero()))
            .collect();
        self.faces.index_of(&columns)
    }
}

/// Clear denominators and divide by the content.
pub(crate) fn integer_row(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let den = v.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
