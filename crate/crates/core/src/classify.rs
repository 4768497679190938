//! Deciding isomorphism of `M_A(β)` and `M_A(β′)`, building witnesses, and
//! the specialisations to normal configurations and monomial curves.
//!
//! Two parameters give isomorphic systems exactly when their `E_τ` sets
//! agree on every face. When they do, the shift `χ = β′ − β` avoids
//! `V(B_{−χ,χ})`, and the contiguity operators for `χ` and `−χ` compose to
//! a nonzero scalar on solutions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cone::Face;
use crate::configuration::Configuration;
use crate::error::{check_dim, Error, Result};
use crate::lattice::solve_integer;
use crate::poly::LinearProduct;
use crate::scalar::Scalar;
use crate::semigroup::{e_tau, facet_value_semigroup, is_normal, ETauSet, NumericalSemigroup};
use crate::series::{apply_operator, check_solution, phi_v, starting_exponent, ResidualReport};
use crate::toric::b_ideal;
use crate::weyl::{contiguity_operator, SymmetryOperator};

/// `E_τ(β)` for every face, in face-lattice order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EProfile {
    pub sets: Vec<ETauSet>,
}

/// Hashable form of a profile: the sorted residues per face.
pub type ProfileKey = Vec<Vec<Vec<BigRational>>>;

impl EProfile {
    pub fn key(&self) -> ProfileKey {
        self.sets.iter().map(|s| s.residues.clone()).collect()
    }

    /// Index of the first face where the two profiles differ.
    pub fn first_difference(&self, other: &EProfile) -> Option<usize> {
        self.sets
            .iter()
            .zip(&other.sets)
            .position(|(a, b)| a.residues != b.residues)
    }
}

pub fn e_profile(cfg: &Configuration, beta: &[BigRational]) -> Result<EProfile> {
    let sets = (0..cfg.faces().len())
        .map(|i| {
            let mut s = e_tau(cfg, i, beta)?;
            s.residues.sort();
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(EProfile { sets })
}

pub fn isomorphic(cfg: &Configuration, beta: &[BigRational], beta2: &[BigRational]) -> Result<bool> {
    Ok(differing_face(cfg, beta, beta2)?.is_none())
}

/// A face whose `E_τ` separates the two parameters, if any.
pub fn differing_face(cfg: &Configuration, beta: &[BigRational], beta2: &[BigRational]) -> Result<Option<usize>> {
    cfg.check_parameter(beta)?;
    cfg.check_parameter(beta2)?;
    // the whole cone is cheapest and most often decisive
    let order = std::iter::once(cfg.faces().whole_cone()).chain(0..cfg.faces().whole_cone());
    for i in order {
        let a = e_tau(cfg, i, beta)?;
        let b = e_tau(cfg, i, beta2)?;
        if a.residues != b.residues {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Exponents `u, v ∈ N^n` with `Au − Av = χ` and `|u| + |v|` small: the
/// positive and negative parts of an integer solution, improved over a
/// small box of kernel shifts.
pub fn shift_exponents(cfg: &Configuration, chi: &[BigRational]) -> Result<(Vec<u32>, Vec<u32>)> {
    check_dim(cfg.d(), chi.len())?;
    let (x, kernel) = solve_integer(cfg.matrix(), chi).ok_or_else(|| Error::ChiNotInLattice(format!("{chi:?}")))?;
    let r = kernel.len();
    let radius: i64 = match r {
        0 => 0,
        1..=2 => 3,
        3 => 2,
        _ => 1,
    };
    let mut best = x.clone();
    let norm = |v: &[BigInt]| -> BigInt { v.iter().map(|t| t.abs()).sum() };
    let mut best_norm = norm(&best);
    let mut t = vec![-radius; r];
    if r > 0 {
        loop {
            let cand: Vec<BigInt> = (0..cfg.n())
                .map(|i| {
                    t.iter()
                        .zip(&kernel)
                        .fold(x[i].clone(), |acc, (tk, b)| acc + BigInt::from(*tk) * &b[i])
                })
                .collect();
            let cn = norm(&cand);
            if cn < best_norm || (cn == best_norm && cand < best) {
                best = cand;
                best_norm = cn;
            }
            let mut k = 0;
            while k < r {
                t[k] += 1;
                if t[k] <= radius {
                    break;
                }
                t[k] = -radius;
                k += 1;
            }
            if k == r {
                break;
            }
        }
    }
    let part = |positive: bool| -> Result<Vec<u32>> {
        best.iter()
            .map(|c| {
                let y = if c.is_positive() == positive && !c.is_zero() {
                    c.abs()
                } else {
                    BigInt::zero()
                };
                y.to_u32().ok_or(Error::OutOfRange)
            })
            .collect()
    };
    Ok((part(true)?, part(false)?))
}

/// Series evidence for a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCheck {
    /// Truncation order of the starting series `φ_v`.
    pub order: i64,
    /// `P_plus φ_v` against `H_A(β + χ)`.
    pub forward: ResidualReport,
    /// `P_minus P_plus φ_v = scalar · φ_v` holds through this grade.
    pub composition_through: i64,
    pub composition_ok: bool,
}

/// Operators inducing mutually inverse (up to a scalar) maps between the
/// solution spaces of `β` and `β + χ`.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub chi: Vec<BigRational>,
    pub p_plus: LinearProduct<BigRational>,
    pub p_minus: LinearProduct<BigRational>,
    pub plus: SymmetryOperator<BigRational>,
    pub minus: SymmetryOperator<BigRational>,
    /// `p_plus(β + χ) · p_minus(β)`.
    pub scalar: BigRational,
    pub series: Option<SeriesCheck>,
}

/// Build a witness for `M_A(β) ≅ M_A(β′)`.
///
/// With `series_order = Some(k)` the operators are also applied to `φ_v`
/// for a generic starting exponent of `β`, computed far enough that both
/// the forward residual and the composition are checked through grade
/// `k` at least.
pub fn iso_witness(
    cfg: &Configuration,
    beta: &[BigRational],
    beta2: &[BigRational],
    series_order: Option<u32>,
) -> Result<IsoWitness> {
    if !isomorphic(cfg, beta, beta2)? {
        return Err(Error::NotIsomorphic);
    }
    let chi: Vec<BigRational> = beta2.iter().zip(beta).map(|(a, b)| a - b).collect();
    let neg: Vec<BigRational> = chi.iter().map(|x| -x).collect();
    let plus_ideal = b_ideal(cfg, &chi)?;
    let minus_ideal = b_ideal(cfg, &neg)?;
    let p_plus = plus_ideal
        .b_poly_avoiding(cfg, beta2)
        .ok_or_else(|| Error::WitnessFailure("β′ lies on V(B_χ)".into()))?;
    let p_minus = minus_ideal
        .b_poly_avoiding(cfg, beta)
        .ok_or_else(|| Error::WitnessFailure("β lies on V(B_{−χ})".into()))?;
    let scalar = p_plus.eval(beta2) * p_minus.eval(beta);
    if scalar.is_zero() {
        return Err(Error::WitnessFailure("the composition scalar vanishes".into()));
    }
    let (u, v) = shift_exponents(cfg, &chi)?;
    let plus = contiguity_operator(cfg, &chi, &p_plus, &u, &v)?;
    let minus = contiguity_operator(cfg, &neg, &p_minus, &v, &u)?;
    let series = match series_order {
        None => None,
        Some(k) => Some(series_check(cfg, beta, &chi, &plus, &minus, &scalar, k)?),
    };
    if let Some(s) = &series {
        if !(s.forward.passed && s.composition_ok) {
            return Err(Error::WitnessFailure("series action check failed".into()));
        }
    }
    Ok(IsoWitness {
        chi,
        p_plus,
        p_minus,
        plus,
        minus,
        scalar,
        series,
    })
}

fn series_check(
    cfg: &Configuration,
    beta: &[BigRational],
    chi: &[BigRational],
    plus: &SymmetryOperator<BigRational>,
    minus: &SymmetryOperator<BigRational>,
    scalar: &BigRational,
    k: u32,
) -> Result<SeriesCheck> {
    let order = k + plus.element.d_degree() + minus.element.d_degree();
    let v = starting_exponent(cfg, beta)?;
    let phi = phi_v(cfg, &v, order)?;
    let forward = apply_operator(&plus.element, &phi);
    let shifted: Vec<BigRational> = beta.iter().zip(chi).map(|(a, b)| a + b).collect();
    let report = check_solution(cfg, &shifted, &forward)?;
    let back = apply_operator(&minus.element, &forward);
    let expected = phi.scale(scalar);
    Ok(SeriesCheck {
        order: order as i64,
        forward: report,
        composition_through: back.order,
        composition_ok: back.agrees_with(&expected) && back.order >= k as i64,
    })
}

/// The normal-case criterion: `β − β′ ∈ ZA` and the same facets take
/// natural values.
pub fn classify_normal(cfg: &Configuration, beta: &[BigRational], beta2: &[BigRational]) -> Result<bool> {
    cfg.check_parameter(beta)?;
    cfg.check_parameter(beta2)?;
    if !is_normal(cfg)? {
        return Err(Error::NotNormal);
    }
    let diff: Vec<BigRational> = beta.iter().zip(beta2).map(|(a, b)| a - b).collect();
    if !cfg.in_za(&diff) {
        return Ok(false);
    }
    let natural = |b: &[BigRational]| -> Vec<bool> { cfg.facet_values(b).iter().map(|x| x.is_natural()).collect() };
    Ok(natural(beta) == natural(beta2))
}

/// A monomial curve `(1 … 1; 0 i_2 … i_n)` with its two facet semigroups.
#[derive(Clone, Debug)]
pub struct Curve {
    pub degrees: Vec<i64>,
    /// Facet `F(s) = s_2`, values `i_j`.
    pub first: NumericalSemigroup,
    pub first_facet: usize,
    /// Facet `F(s) = i_n s_1 − s_2`, values `i_n − i_j`.
    pub second: NumericalSemigroup,
    pub second_facet: usize,
}

impl Curve {
    pub fn new(cfg: &Configuration) -> Result<Self> {
        if cfg.d() != 2 {
            return Err(Error::NotCurve(format!("expected 2 rows, got {}", cfg.d())));
        }
        if (0..cfg.n()).any(|j| cfg.column(j)[0] != 1) {
            return Err(Error::NotCurve("first row must be all ones".into()));
        }
        let degrees: Vec<i64> = (0..cfg.n()).map(|j| cfg.column(j)[1]).collect();
        if degrees[0] != 0 || degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotCurve("second row must be 0 < i_2 < … < i_n".into()));
        }
        let g = degrees.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
        if g != 1 {
            return Err(Error::NotCurve(format!("second row has gcd {g}")));
        }
        let first_facet = cfg
            .facets()
            .iter()
            .position(|f| f.zero_columns == vec![0])
            .ok_or_else(|| Error::Internal("curve lacks the facet through a_1".into()))?;
        let second_facet = cfg
            .facets()
            .iter()
            .position(|f| f.zero_columns == vec![cfg.n() - 1])
            .ok_or_else(|| Error::Internal("curve lacks the facet through a_n".into()))?;
        Ok(Curve {
            first: facet_value_semigroup(cfg, first_facet)?,
            second: facet_value_semigroup(cfg, second_facet)?,
            degrees,
            first_facet,
            second_facet,
        })
    }

    pub fn top(&self) -> i64 {
        *self.degrees.last().expect("n ≥ 2")
    }

    /// `(F_{σ1}(β), F_{σ2}(β)) = (β_2, i_n β_1 − β_2)`.
    pub fn facet_values(&self, beta: &[BigRational]) -> (BigRational, BigRational) {
        let second = BigRational::from_i64(self.top()) * beta[0].clone() - beta[1].clone();
        (beta[1].clone(), second)
    }

    /// `(F_{σ1}(β) ∈ F_{σ1}(NA), F_{σ2}(β) ∈ F_{σ2}(NA))`.
    pub fn facet_membership(&self, beta: &[BigRational]) -> (bool, bool) {
        let (f1, f2) = self.facet_values(beta);
        (self.first.contains_rational(&f1), self.second.contains_rational(&f2))
    }
}

/// Least number of summands from `gens` (all positive) adding up to each
/// value `0..=limit`; `None` for values outside the semigroup.
fn min_summands(gens: &[i64], limit: i64) -> Vec<Option<i64>> {
    let mut best: Vec<Option<i64>> = vec![None; limit as usize + 1];
    best[0] = Some(0);
    for y in 1..=limit {
        best[y as usize] = gens
            .iter()
            .filter(|&&g| g <= y)
            .filter_map(|&g| best[(y - g) as usize].map(|c| c + 1))
            .min();
    }
    best
}

/// The holes `{β ∈ ZA : F_{σi}(β) ∈ F_{σi}(NA), i = 1, 2} \ NA`.
///
/// With `c_1(y)` the least number of nonzero degrees summing to `y`,
/// `β ∈ NA` iff `β_2 ∈ F_{σ1}(NA)` and `β_1 ≥ c_1(β_2)`; symmetrically for
/// the second facet. Beyond `Frobenius + i_n`, `c_i(y) − y/i_n` no longer
/// grows, so its maximum `K_i` over an initial range bounds it everywhere,
/// and every hole has `β_1 < K_1 + K_2` and `0 ≤ β_2 ≤ i_n β_1`.
pub fn curve_holes(cfg: &Configuration) -> Result<Vec<Vec<i64>>> {
    let curve = Curve::new(cfg)?;
    let top = curve.top();
    let first_gens: Vec<i64> = curve.degrees.iter().copied().filter(|&x| x > 0).collect();
    let second_gens: Vec<i64> = curve.degrees.iter().map(|&x| top - x).filter(|&x| x > 0).collect();
    // K_i as a rational bound, scaled by i_n to stay integral
    let excess = |gens: &[i64], frob: i64| -> i64 {
        let limit = frob.max(0) + top;
        min_summands(gens, limit)
            .iter()
            .enumerate()
            .filter_map(|(y, c)| c.map(|c| top * c - y as i64))
            .max()
            .unwrap_or(0)
    };
    let k1 = excess(&first_gens, curve.first.frobenius);
    let k2 = excess(&second_gens, curve.second.frobenius);
    // β_1 < (k1 + k2) / i_n
    let beta1_max = (k1 + k2) / top + 1;
    let beta2_max = top * beta1_max;
    let c1 = min_summands(&first_gens, beta2_max);
    let mut holes = Vec::new();
    for b1 in 0..=beta1_max {
        for b2 in 0..=top * b1 {
            let Some(c) = c1[b2 as usize] else { continue };
            if b1 >= c {
                continue;
            }
            let beta = [BigRational::from_i64(b1), BigRational::from_i64(b2)];
            let (in1, in2) = curve.facet_membership(&beta);
            if in1 && in2 {
                holes.push(vec![b1, b2]);
            }
        }
    }
    holes.sort();
    Ok(holes)
}

/// The five-part decomposition of `ZA` for a monomial curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePart {
    Semigroup,
    FirstOnly,
    SecondOnly,
    Neither,
    Hole,
}

pub fn curve_part(curve: &Curve, holes: &[Vec<i64>], cfg: &Configuration, beta: &[i64]) -> Result<CurvePart> {
    let q: Vec<BigRational> = beta.iter().map(|&x| BigRational::from_i64(x)).collect();
    if cfg.in_na(&q)?.is_some() {
        return Ok(CurvePart::Semigroup);
    }
    if holes.iter().any(|h| h.as_slice() == beta) {
        return Ok(CurvePart::Hole);
    }
    Ok(match curve.facet_membership(&q) {
        (true, false) => CurvePart::FirstOnly,
        (false, true) => CurvePart::SecondOnly,
        (false, false) => CurvePart::Neither,
        (true, true) => return Err(Error::Internal("facet-valued point is neither in NA nor a hole".into())),
    })
}

/// The monomial-curve criterion. Holes are isomorphic exactly to holes;
/// otherwise `β − β′ ∈ ZA`, `β′` is not a hole, and the same facets take
/// values in their semigroups.
pub fn classify_curve(cfg: &Configuration, beta: &[BigRational], beta2: &[BigRational]) -> Result<bool> {
    cfg.check_parameter(beta)?;
    cfg.check_parameter(beta2)?;
    let curve = Curve::new(cfg)?;
    let holes = curve_holes(cfg)?;
    let is_hole = |b: &[BigRational]| -> bool {
        b.iter().all(|x| x.is_integer())
            && holes
                .iter()
                .any(|h| h.iter().zip(b).all(|(x, y)| BigRational::from_i64(*x) == *y))
    };
    let (h1, h2) = (is_hole(beta), is_hole(beta2));
    if h1 || h2 {
        return Ok(h1 && h2);
    }
    let diff: Vec<BigRational> = beta.iter().zip(beta2).map(|(a, b)| a - b).collect();
    Ok(cfg.in_za(&diff) && curve.facet_membership(beta) == curve.facet_membership(beta2))
}

/// One isomorphism class found by [`enumerate_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterClass {
    /// Lexicographically least member.
    pub representative: Vec<i64>,
    pub size: usize,
    pub profile: EProfile,
}

/// Which box points take part in an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFilter {
    All,
    /// Only points of `NA`.
    Semigroup,
}

/// Group the integer points of a box (shifted by `offset`) by profile.
/// Classes are sorted by representative.
pub fn enumerate_classes(
    cfg: &Configuration,
    bounds: &[(i64, i64)],
    offset: &[BigRational],
    filter: PointFilter,
) -> Result<Vec<(ParameterClass, Vec<Vec<i64>>)>> {
    check_dim(cfg.d(), bounds.len())?;
    check_dim(cfg.d(), offset.len())?;
    let mut points: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in bounds {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty range {lo}:{hi}")));
        }
        points = points
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let results: Vec<Option<(Vec<i64>, EProfile)>> = points
        .par_iter()
        .map(|p| {
            let beta: Vec<BigRational> = p
                .iter()
                .zip(offset)
                .map(|(&x, o)| BigRational::from_i64(x) + o)
                .collect();
            if filter == PointFilter::Semigroup && cfg.in_na(&beta)?.is_none() {
                return Ok(None);
            }
            Ok(Some((p.clone(), e_profile(cfg, &beta)?)))
        })
        .collect::<Result<_>>()?;
    let mut groups: BTreeMap<ProfileKey, (EProfile, Vec<Vec<i64>>)> = BTreeMap::new();
    for (p, profile) in results.into_iter().flatten() {
        groups
            .entry(profile.key())
            .or_insert_with(|| (profile, Vec::new()))
            .1
            .push(p);
    }
    let mut classes: Vec<(ParameterClass, Vec<Vec<i64>>)> = groups
        .into_values()
        .map(|(profile, mut members)| {
            members.sort();
            (
                ParameterClass {
                    representative: members[0].clone(),
                    size: members.len(),
                    profile,
                },
                members,
            )
        })
        .collect();
    classes.sort_by(|a, b| a.0.representative.cmp(&b.0.representative));
    Ok(classes)
}

/// Faces carrying Laurent polynomial solutions, by the criterion quoted
/// for them: `dim τ = #{j : a_j ∈ τ}`, `0 ∈ E_τ(β)`, and `0 ∉ E_{τ′}(β)`
/// for every strict subface `τ′`. The count is asserted, not verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentFaces {
    pub faces: Vec<Face>,
    pub count: usize,
}

pub fn laurent_solution_faces(cfg: &Configuration, beta: &[BigRational]) -> Result<LaurentFaces> {
    let profile = e_profile(cfg, beta)?;
    let lattice = cfg.faces();
    let faces: Vec<Face> = (0..lattice.len())
        .filter(|&i| {
            let f = lattice.faces[i].clone();
            f.dim == f.columns.len()
                && profile.sets[i].contains_zero()
                && lattice.strict_subfaces(i).all(|k| !profile.sets[k].contains_zero())
        })
        .map(|i| lattice.faces[i].clone())
        .collect();
    Ok(LaurentFaces {
        count: faces.len(),
        faces,
    })
}

/// Which point a pulling triangulation cones from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pull {
    First,
    Last,
}

/// A pulling triangulation of `conv(A)`: maximal simplices as column sets.
pub fn pulling_triangulation(cfg: &Configuration, pull: Pull) -> Vec<Vec<usize>> {
    fn rec(cfg: &Configuration, face: usize, pull: Pull) -> Vec<Vec<usize>> {
        let lattice = cfg.faces();
        let f = &lattice.faces[face];
        if f.dim <= 1 {
            return f.columns.first().map(|&c| vec![vec![c]]).unwrap_or_default();
        }
        let apex = match pull {
            Pull::First => f.columns[0],
            Pull::Last => *f.columns.last().expect("nonzero face has columns"),
        };
        let mut out = Vec::new();
        for k in lattice.strict_subfaces(face) {
            let g = &lattice.faces[k];
            if g.dim + 1 == f.dim && !g.contains_column(apex) {
                for mut s in rec(cfg, k, pull) {
                    s.push(apex);
                    s.sort_unstable();
                    out.push(s);
                }
            }
        }
        out
    }
    let mut simplices = rec(cfg, cfg.faces().whole_cone(), pull);
    simplices.sort();
    simplices
}

/// Normalized volume of `conv(A)` with respect to `ZA`, from a pulling
/// triangulation.
pub fn normalized_volume_with(cfg: &Configuration, pull: Pull) -> Result<BigInt> {
    let index = cfg.za().as_matrix().det()?.abs();
    let mut total = BigInt::zero();
    for s in pulling_triangulation(cfg, pull) {
        let cols: Vec<Vec<BigInt>> = s.iter().map(|&j| cfg.column_big(j)).collect();
        let m = crate::lattice::IntMatrix::from_columns(cfg.d(), &cols);
        total += m.det()?.abs();
    }
    if !(&total % &index).is_zero() {
        return Err(Error::Internal(
            "simplex volumes are not multiples of the lattice index".into(),
        ));
    }
    Ok(total / index)
}

/// Normalized volume, cross-checked between two pulling triangulations.
pub fn normalized_volume(cfg: &Configuration) -> Result<BigInt> {
    let a = normalized_volume_with(cfg, Pull::First)?;
    let b = normalized_volume_with(cfg, Pull::Last)?;
    if a != b {
        return Err(Error::Internal(format!("triangulations disagree: {a} vs {b}")));
    }
    Ok(a)
}
