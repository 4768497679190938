//! The toric ideal `I_A`, the monomial ideals `M_χ` and the b-ideals `B_χ`.

pub mod bideal;
pub mod graver;
pub mod groebner;
pub mod monomial;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::configuration::Configuration;
use crate::error::{Error, Result};

pub use bideal::{b_ideal, AffineSubspace, BComponent, BIdeal, SubspaceArrangement};
pub use groebner::{groebner_basis, normal_form, TermOrder};
pub use monomial::{m_chi, MonomialIdeal, StandardPair};

/// `∂^plus − ∂^minus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

impl Binomial {
    /// From an integer vector `u`: `∂^{u+} − ∂^{u−}`.
    pub fn from_vector(u: &[BigInt]) -> Result<Self> {
        let part = |positive: bool| -> Result<Vec<u32>> {
            u.iter()
                .map(|x| {
                    let y = if positive == x.is_positive() {
                        x.abs()
                    } else {
                        BigInt::from(0)
                    };
                    y.to_u32().ok_or(Error::OutOfRange)
                })
                .collect()
        };
        Ok(Binomial {
            plus: part(true)?,
            minus: part(false)?,
        })
    }

    pub fn degree(&self) -> u32 {
        self.plus.iter().sum::<u32>().max(self.minus.iter().sum())
    }

    /// Divide both terms by the largest common power of variable `i`.
    fn saturate_in(&self, i: usize) -> Binomial {
        let k = self.plus[i].min(self.minus[i]);
        let mut b = self.clone();
        b.plus[i] -= k;
        b.minus[i] -= k;
        b
    }
}

/// Generators of `I_A` and reduced Gröbner bases for each choice of lowest
/// variable, computed on demand.
#[derive(Debug)]
pub struct ToricIdeal {
    pub generators: Vec<Binomial>,
    bases: Vec<OnceLock<Vec<Binomial>>>,
}

impl ToricIdeal {
    /// The reduced Gröbner basis for the reverse lexicographic order with
    /// lowest variable `i`.
    pub fn groebner(&self, i: usize) -> &[Binomial] {
        self.bases[i].get_or_init(|| groebner_basis(&self.generators, &TermOrder::new(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Compute `I_A` from a kernel basis: the lattice basis ideal saturated
/// with respect to each variable in turn.
pub fn toric_ideal(cfg: &Configuration) -> Result<ToricIdeal> {
    let n = cfg.n();
    let mut gens: Vec<Binomial> = cfg
        .kernel()
        .vectors()
        .iter()
        .map(|u| Binomial::from_vector(u))
        .collect::<Result<_>>()?;
    if !gens.is_empty() {
        for i in 0..n {
            let order = TermOrder::new(i);
            let basis = groebner_basis(&gens, &order);
            gens = basis.iter().map(|b| b.saturate_in(i)).collect();
        }
        gens = groebner_basis(&gens, &TermOrder::new(n - 1));
    }
    Ok(ToricIdeal {
        generators: gens,
        bases: (0..n).map(|_| OnceLock::new()).collect(),
    })
}

impl Configuration {
    /// The toric ideal, computed once.
    pub fn toric(&self) -> Result<&ToricIdeal> {
        if let Some(t) = self.toric.get() {
            return Ok(t);
        }
        let t = toric_ideal(self)?;
        Ok(self.toric.get_or_init(|| t))
    }
}
