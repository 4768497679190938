//! The b-ideal `B_χ` through its prime components, and finite unions of
//! affine subspaces for comparing zero sets.
//!
//! Each standard pair `(u, τ)` of `M_χ` gives the prime
//! `⟨F_σ − F_σ(Au) : σ ⊇ τ⟩` whose zero set is `Au + Q(A ∩ τ)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::configuration::Configuration;
use crate::error::{check_dim, Result};
use crate::lattice::to_rational;
use crate::linalg;
use crate::poly::{LinearForm, LinearProduct};

use super::monomial::{m_chi, MonomialIdeal, StandardPair};

/// One prime component: `F_σ(s) = F_σ(point)` for the facets `σ ⊇ τ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BComponent {
    pub point: Vec<BigInt>,
    /// Face index in the configuration's face lattice.
    pub face: usize,
    pub forms: Vec<LinearForm<BigRational>>,
}

impl BComponent {
    pub fn contains(&self, s: &[BigRational]) -> bool {
        self.forms.iter().all(|f| f.eval(s).is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct BIdeal {
    pub chi: Vec<BigRational>,
    pub monomial: MonomialIdeal,
    pub pairs: Vec<StandardPair>,
    pub components: Vec<BComponent>,
}

/// Compute `B_χ`. An empty component list means `B_χ` is the unit ideal.
pub fn b_ideal(cfg: &Configuration, chi: &[BigRational]) -> Result<BIdeal> {
    let monomial = m_chi(cfg, chi)?;
    let pairs = monomial.standard_pairs(&cfg.proper_face_columns());
    let mut seen = BTreeSet::new();
    let mut components = Vec::new();
    for pair in &pairs {
        let u: Vec<i64> = pair.u.iter().map(|&x| x as i64).collect();
        let point: Vec<BigInt> = cfg.apply(&u).into_iter().map(BigInt::from).collect();
        let face = cfg
            .faces()
            .index_of(&pair.tau)
            .expect("standard pairs are taken over faces");
        let forms: Vec<LinearForm<BigRational>> = cfg
            .face(face)
            .facets
            .iter()
            .map(|&s| {
                let f = &cfg.facets()[s];
                LinearForm::new(f.f.clone(), f.eval_int(&point))
            })
            .collect();
        let key: Vec<BigRational> = forms.iter().map(|f| f.constant.clone()).collect();
        if seen.insert((face, key)) {
            components.push(BComponent { point, face, forms });
        }
    }
    Ok(BIdeal {
        chi: chi.to_vec(),
        monomial,
        pairs,
        components,
    })
}

impl BIdeal {
    pub fn is_unit(&self) -> bool {
        self.components.is_empty()
    }

    /// `s ∈ V(B_χ)`.
    pub fn v_b_member(&self, s: &[BigRational]) -> bool {
        self.components.iter().any(|c| c.contains(s))
    }

    /// A product of component forms lying in `B_χ` and not vanishing at
    /// `point`, or `None` when `point ∈ V(B_χ)`.
    ///
    /// Components are visited in order; a component already annihilated
    /// by a chosen factor is skipped, otherwise its first form that is
    /// nonzero at `point` is added. The product vanishes on every
    /// component, and `B_χ` is an intersection of primes, so it lies in
    /// `B_χ`.
    pub fn b_poly_avoiding(&self, cfg: &Configuration, point: &[BigRational]) -> Option<LinearProduct<BigRational>> {
        let mut factors: Vec<LinearForm<BigRational>> = Vec::new();
        for comp in &self.components {
            if factors.iter().any(|f| vanishes_on(cfg, f, comp)) {
                continue;
            }
            let f = comp.forms.iter().find(|f| !f.eval(point).is_zero())?;
            factors.push(f.clone());
        }
        Some(LinearProduct::from_factors(cfg.d(), factors))
    }

    /// Whether `b` lies in `B_χ`: each component must be killed by some
    /// factor.
    pub fn contains_product(&self, cfg: &Configuration, b: &LinearProduct<BigRational>) -> bool {
        if b.scale.is_zero() {
            return true;
        }
        self.components
            .iter()
            .all(|c| b.factors.iter().any(|f| vanishes_on(cfg, f, c)))
    }

    pub fn zero_set(&self, cfg: &Configuration) -> SubspaceArrangement {
        SubspaceArrangement::new(
            self.components
                .iter()
                .map(|c| AffineSubspace::new(to_rational(&c.point), face_directions(cfg, c.face)))
                .collect(),
        )
    }
}

fn face_directions(cfg: &Configuration, face: usize) -> Vec<Vec<BigRational>> {
    cfg.face(face).columns.iter().map(|&j| cfg.column_rational(j)).collect()
}

/// Whether the affine form vanishes on `point + Q(A ∩ τ)`.
pub fn vanishes_on(cfg: &Configuration, f: &LinearForm<BigRational>, comp: &BComponent) -> bool {
    f.eval(&to_rational(&comp.point)).is_zero()
        && cfg
            .face(comp.face)
            .columns
            .iter()
            .all(|&j| linalg::dot(&f.coeffs, &cfg.column_rational(j)).is_zero())
}

/// `point + span(directions)`, stored canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSubspace {
    /// Reduced row echelon basis of the direction space.
    pub directions: Vec<Vec<BigRational>>,
    /// The point with zero coordinates at the pivot columns.
    pub point: Vec<BigRational>,
}

impl AffineSubspace {
    pub fn new(point: Vec<BigRational>, directions: Vec<Vec<BigRational>>) -> Self {
        let dim = point.len();
        let (basis, _) = linalg::rref(&directions, dim);
        let point = linalg::affine_canonical(&point, &basis);
        AffineSubspace {
            directions: basis,
            point,
        }
    }

    pub fn contains_point(&self, p: &[BigRational]) -> bool {
        let diff: Vec<BigRational> = p.iter().zip(&self.point).map(|(a, b)| a - b).collect();
        linalg::in_span(&self.directions, &diff)
    }

    pub fn contains(&self, other: &AffineSubspace) -> bool {
        self.contains_point(&other.point) && other.directions.iter().all(|d| linalg::in_span(&self.directions, d))
    }

    pub fn translate(&self, shift: &[BigRational]) -> AffineSubspace {
        let p: Vec<BigRational> = self.point.iter().zip(shift).map(|(a, b)| a + b).collect();
        AffineSubspace::new(p, self.directions.clone())
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }
}

/// A finite union of affine subspaces, reduced to its maximal members.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceArrangement {
    pub components: Vec<AffineSubspace>,
}

impl SubspaceArrangement {
    pub fn new(components: Vec<AffineSubspace>) -> Self {
        let mut comps = components;
        comps.sort();
        comps.dedup();
        let mut keep: Vec<AffineSubspace> = Vec::new();
        for (i, c) in comps.iter().enumerate() {
            let redundant = comps
                .iter()
                .enumerate()
                .any(|(k, o)| k != i && o.contains(c) && (o != c));
            if !redundant {
                keep.push(c.clone());
            }
        }
        SubspaceArrangement { components: keep }
    }

    pub fn empty() -> Self {
        SubspaceArrangement { components: Vec::new() }
    }

    pub fn union(&self, other: &SubspaceArrangement) -> SubspaceArrangement {
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        SubspaceArrangement::new(comps)
    }

    pub fn translate(&self, shift: &[BigRational]) -> SubspaceArrangement {
        SubspaceArrangement::new(self.components.iter().map(|c| c.translate(shift)).collect())
    }

    pub fn contains_point(&self, p: &[BigRational]) -> bool {
        self.components.iter().any(|c| c.contains_point(p))
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// `V(B_{−χ,χ}) = (V(B_χ) − χ) ∪ V(B_{−χ})`.
pub fn two_sided_zero_set(cfg: &Configuration, chi: &[BigRational]) -> Result<SubspaceArrangement> {
    check_dim(cfg.d(), chi.len())?;
    let neg: Vec<BigRational> = chi.iter().map(|x| -x).collect();
    let plus = b_ideal(cfg, chi)?.zero_set(cfg);
    let minus = b_ideal(cfg, &neg)?.zero_set(cfg);
    Ok(plus.translate(&neg).union(&minus))
}
