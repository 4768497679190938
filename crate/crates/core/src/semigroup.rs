//! The semigroup `NA`: the invariants `E_τ(β)`, normality, facet-value
//! numerical semigroups and resonance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cone::Face;
use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::lattice::{solve_integer, IntMatrix};
use crate::scalar::Scalar;

/// `E_τ(β)`: canonical residues `λ` modulo `Z(A ∩ τ)` with
/// `β − λ ∈ NA + Z(A ∩ τ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ETauSet {
    pub face: Face,
    pub residues: Vec<Vec<BigRational>>,
}

impl ETauSet {
    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.residues.iter().any(|r| r.iter().all(Zero::is_zero))
    }
}

/// The points of `(β + ZA) ∩ Q(A ∩ τ)`, one per class modulo `Z(A ∩ τ)`.
pub fn residue_candidates(cfg: &Configuration, face: usize, beta: &[BigRational]) -> Result<Vec<Vec<BigRational>>> {
    cfg.check_parameter(beta)?;
    let data = cfg.face_data(face);
    let base: Vec<BigRational> = if data.annihilator.is_empty() {
        beta.to_vec()
    } else {
        let n = IntMatrix::new(data.annihilator.clone())?;
        let b = cfg.za().as_matrix();
        let nb = n.mul(&b)?;
        let rhs: Vec<BigRational> = n.mul_rational(beta).into_iter().map(|x| -x).collect();
        let Some((c, _)) = solve_integer(&nb, &rhs) else {
            return Ok(Vec::new());
        };
        let shift = b.mul_vec(&c);
        beta.iter()
            .zip(&shift)
            .map(|(x, y)| x + BigRational::from_bigint(y))
            .collect()
    };
    let mut out: Vec<Vec<BigRational>> = data
        .residues
        .representatives
        .iter()
        .map(|rep| {
            let v: Vec<BigRational> = base.iter().zip(rep).map(|(x, y)| x + y).collect();
            data.small
                .canonical_residue(&v)
                .ok_or_else(|| Error::Internal("candidate left the face span".into()))
        })
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Compute `E_τ(β)` for the face with index `face`.
pub fn e_tau(cfg: &Configuration, face: usize, beta: &[BigRational]) -> Result<ETauSet> {
    let mut residues = Vec::new();
    for lambda in residue_candidates(cfg, face, beta)? {
        let gamma: Vec<BigRational> = beta.iter().zip(&lambda).map(|(b, l)| b - l).collect();
        if cfg.in_na_mod_face(face, &gamma)? {
            residues.push(lambda);
        }
    }
    Ok(ETauSet {
        face: cfg.face(face).clone(),
        residues,
    })
}

/// Whether `NA = ZA ∩ Q≥0 A`.
///
/// Every point of `ZA ∩ Q≥0 A` is a point of a half-open parallelepiped
/// spanned by `d` columns plus an element of `NA`, and such parallelepiped
/// points have degree at most `d − 1`; it suffices to test those.
pub fn is_normal(cfg: &Configuration) -> Result<bool> {
    let d = cfg.d();
    if d == 1 {
        return Ok(true);
    }
    let top = (d - 1) as i64;
    let bounds: Vec<i64> = (0..d)
        .map(|i| top * (0..cfg.n()).map(|j| cfg.column(j)[i].abs()).max().unwrap_or(0))
        .collect();
    let volume: f64 = bounds.iter().map(|b| (2 * b + 1) as f64).product();
    if volume > 5e7 {
        return Err(Error::OutOfRange);
    }
    let mut point: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let gamma: Vec<BigRational> = point.iter().map(|&x| BigRational::from_i64(x)).collect();
        let deg = cfg.degree(&gamma);
        if deg.is_integer()
            && deg.is_positive()
            && deg <= BigRational::from_i64(top)
            && cfg.in_cone(&gamma)
            && cfg.in_za(&gamma)
            && cfg.in_na(&gamma)?.is_none()
        {
            return Ok(false);
        }
        let mut k = 0;
        while k < d {
            point[k] += 1;
            if point[k] <= bounds[k] {
                break;
            }
            point[k] = -bounds[k];
            k += 1;
        }
        if k == d {
            return Ok(true);
        }
    }
}

/// A numerical semigroup given by generators with gcd one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    pub generators: Vec<u64>,
    /// Largest gap, or −1 when there are none.
    pub frobenius: i64,
    pub gaps: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().fold(0u64, |a, &b| a.gcd(&b));
        if g != 1 {
            return Err(Error::InvalidInput(format!(
                "numerical semigroup generators {gens:?} have gcd {g}"
            )));
        }
        let smallest = gens[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        let mut x = 0usize;
        while run < smallest {
            x += 1;
            let m = gens.iter().any(|&g| g as usize <= x && member[x - g as usize]);
            member.push(m);
            run = if m { run + 1 } else { 0 };
        }
        let gaps: Vec<u64> = (0..member.len()).filter(|&i| !member[i]).map(|i| i as u64).collect();
        let frobenius = gaps.last().map_or(-1, |&g| g as i64);
        Ok(NumericalSemigroup {
            generators: gens,
            frobenius,
            gaps,
        })
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        if x.is_negative() {
            return false;
        }
        match x.to_u64() {
            Some(v) => self.gaps.binary_search(&v).is_err(),
            None => true,
        }
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        x.is_integer() && self.contains(&x.to_integer())
    }
}

/// `F_σ(NA)` for the facet with index `facet`.
pub fn facet_value_semigroup(cfg: &Configuration, facet: usize) -> Result<NumericalSemigroup> {
    let values: Vec<u64> = cfg.facets()[facet]
        .values
        .iter()
        .map(|v| v.to_u64().ok_or(Error::OutOfRange))
        .collect::<Result<_>>()?;
    NumericalSemigroup::new(&values)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetResonance {
    pub value: BigRational,
    pub integer: bool,
    pub natural: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resonance {
    pub facets: Vec<FacetResonance>,
    pub nonresonant: bool,
    pub semi_nonresonant: bool,
}

/// Facet values of `β` and the resulting (semi-)nonresonance flags.
pub fn resonance(cfg: &Configuration, beta: &[BigRational]) -> Result<Resonance> {
    cfg.check_parameter(beta)?;
    let facets: Vec<FacetResonance> = cfg
        .facet_values(beta)
        .into_iter()
        .map(|value| FacetResonance {
            integer: value.is_integer(),
            natural: value.is_natural(),
            value,
        })
        .collect();
    Ok(Resonance {
        nonresonant: facets.iter().all(|f| !f.integer),
        semi_nonresonant: facets.iter().all(|f| !f.natural),
        facets,
    })
}
