//! A self-check suite run against one configuration: each property
//! recomputes something two ways and reports whether they agree.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify_curve, classify_normal, curve_holes, iso_witness, isomorphic, normalized_volume};
use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::lattice::rational_i64s;
use crate::scalar::Scalar;
use crate::semigroup::{e_tau, is_normal};
use crate::toric::bideal::two_sided_zero_set;
use crate::toric::{b_ideal, m_chi, normal_form};
use crate::weyl::{verify_certificate, verify_weight, Weyl};

/// Outcome of one property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, result: Result<String>) -> CheckOutcome {
    match result {
        Ok(detail) => CheckOutcome {
            name,
            passed: true,
            detail,
        },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn fail(msg: String) -> Error {
    Error::Internal(msg)
}

fn q(v: &[i64]) -> Vec<BigRational> {
    rational_i64s(v)
}

/// Exponent vectors of total degree at most `k`.
fn monomials_up_to(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                let used: u32 = p.iter().sum();
                (0..=k - used).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// Shifts used by the membership checks: the columns, plus a few sums
/// and differences of them.
fn shifts(cfg: &Configuration) -> Vec<Vec<i64>> {
    let n = cfg.n();
    let (first, last) = (cfg.column(0), cfg.column(n - 1));
    let mut out: Vec<Vec<i64>> = (0..n).map(|j| cfg.column(j).to_vec()).collect();
    out.push(first.iter().zip(last).map(|(a, b)| a + b).collect());
    out.push(last.iter().zip(first).map(|(a, b)| a - b).collect());
    out.push(first.iter().map(|a| 2 * a).collect());
    out.sort();
    out.dedup();
    out
}

fn check_groebner(cfg: &Configuration) -> Result<String> {
    let t = cfg.toric()?;
    let mut count = 0;
    for i in 0..cfg.n() {
        let basis = if t.is_zero() { &[][..] } else { t.groebner(i) };
        for g in basis.iter().chain(&t.generators) {
            let p: Vec<i64> = g.plus.iter().map(|&x| x as i64).collect();
            let m: Vec<i64> = g.minus.iter().map(|&x| x as i64).collect();
            if cfg.apply(&p) != cfg.apply(&m) {
                return Err(fail(format!("binomial {g:?} is not homogeneous")));
            }
        }
        for g in &t.generators {
            if normal_form(&g.plus, basis) != normal_form(&g.minus, basis) {
                return Err(fail(format!("generator {g:?} does not reduce to zero")));
            }
            count += 1;
        }
    }
    Ok(format!("{count} reductions to zero"))
}

fn check_m_chi(cfg: &Configuration) -> Result<String> {
    let box_ = monomials_up_to(cfg.n(), 4);
    let mut checked = 0;
    for chi in shifts(cfg) {
        let chi = q(&chi);
        let m = m_chi(cfg, &chi)?;
        let pairs = m.standard_pairs(&cfg.proper_face_columns());
        for u in &box_ {
            let ui: Vec<i64> = u.iter().map(|&x| x as i64).collect();
            let au = q(&cfg.apply(&ui));
            let rest: Vec<BigRational> = au.iter().zip(&chi).map(|(a, b)| a - b).collect();
            let direct = cfg.in_na(&rest)?.is_some();
            if direct != m.contains(u) {
                return Err(fail(format!("membership of {u:?} in M_chi for chi = {chi:?}")));
            }
            let covered = pairs
                .iter()
                .any(|p| (0..cfg.n()).all(|i| p.tau.contains(&i) && u[i] >= p.u[i] || u[i] == p.u[i]));
            if covered == direct {
                return Err(fail(format!("standard pairs misclassify {u:?} for chi = {chi:?}")));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} monomials agree"))
}

fn check_shift_law(cfg: &Configuration) -> Result<String> {
    let cols: Vec<Vec<i64>> = (0..cfg.n()).map(|j| cfg.column(j).to_vec()).collect();
    let mut checked = 0;
    for a in cols.iter().take(3) {
        for b in cols.iter().rev().take(2) {
            let (qa, qb) = (q(a), q(b));
            let sum: Vec<BigRational> = qa.iter().zip(&qb).map(|(x, y)| x + y).collect();
            let lhs = b_ideal(cfg, &sum)?.zero_set(cfg);
            let rhs = b_ideal(cfg, &qa)?
                .zero_set(cfg)
                .union(&b_ideal(cfg, &qb)?.zero_set(cfg).translate(&qa));
            if lhs != rhs {
                return Err(fail(format!("V(B) shift law fails for {a:?} + {b:?}")));
            }
            let neg: Vec<BigRational> = qa.iter().map(|x| -x).collect();
            let two = two_sided_zero_set(cfg, &qa)?;
            let both_unit = b_ideal(cfg, &qa)?.is_unit() && b_ideal(cfg, &neg)?.is_unit();
            if two.is_empty() != both_unit {
                return Err(fail(format!(
                    "two-sided zero set for {a:?} disagrees with its b-ideals"
                )));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} shift pairs"))
}

fn check_coherence(cfg: &Configuration, rng: &mut ChaCha8Rng) -> Result<String> {
    let mut checked = 0;
    for _ in 0..6 {
        let beta: Vec<i64> = (0..cfg.d()).map(|_| rng.gen_range(-2..=3)).collect();
        let j = rng.gen_range(0..cfg.n());
        let shifted: Vec<i64> = beta.iter().zip(cfg.column(j)).map(|(a, b)| a + b).collect();
        for f in 0..cfg.faces().len() {
            let small = e_tau(cfg, f, &q(&beta))?;
            let big = e_tau(cfg, f, &q(&shifted))?;
            if !small.residues.iter().all(|r| big.residues.contains(r)) {
                return Err(fail(format!("E_tau({beta:?}) not inside E_tau(beta + a_{})", j + 1)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} face comparisons"))
}

/// Total degree of the two b-polynomials a witness for `β → β + χ` would
/// use, or `None` when one does not exist.
fn witness_degree(cfg: &Configuration, beta: &[BigRational], chi: &[BigRational]) -> Result<Option<usize>> {
    let shifted: Vec<BigRational> = beta.iter().zip(chi).map(|(a, c)| a + c).collect();
    let neg: Vec<BigRational> = chi.iter().map(|x| -x).collect();
    let plus = b_ideal(cfg, chi)?.b_poly_avoiding(cfg, &shifted);
    let minus = b_ideal(cfg, &neg)?.b_poly_avoiding(cfg, beta);
    Ok(plus.zip(minus).map(|(p, m)| p.degree() + m.degree()))
}

/// Witnesses whose b-polynomials have total degree above this are
/// skipped: their operators have thousands of terms.
const WITNESS_DEGREE_BUDGET: usize = 10;

fn check_witnesses(cfg: &Configuration, rng: &mut ChaCha8Rng, order: u32) -> Result<String> {
    let n = cfg.n();
    let mut moves: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        moves.push(cfg.column(i).to_vec());
        moves.push(cfg.column(i).iter().map(|x| -x).collect());
        for j in 0..n {
            if i != j {
                moves.push(cfg.column(i).iter().zip(cfg.column(j)).map(|(a, b)| a - b).collect());
            }
        }
    }
    let (mut built, mut tried, mut skipped) = (0, 0, 0);
    while built < 4 && tried < 60 {
        tried += 1;
        let beta: Vec<i64> = (0..cfg.d()).map(|_| rng.gen_range(-2..=2)).collect();
        let chi = &moves[rng.gen_range(0..moves.len())];
        let beta2: Vec<i64> = beta.iter().zip(chi).map(|(a, b)| a + b).collect();
        let (b1, b2) = (q(&beta), q(&beta2));
        if !isomorphic(cfg, &b1, &b2)? {
            continue;
        }
        match witness_degree(cfg, &b1, &q(chi))? {
            Some(k) if k > WITNESS_DEGREE_BUDGET => {
                skipped += 1;
                continue;
            }
            Some(_) => {}
            None => return Err(fail(format!("no avoiding b-polynomial for {beta:?} -> {beta2:?}"))),
        }
        let w = iso_witness(cfg, &b1, &b2, Some(order))?;
        let series_ok = w.series.as_ref().is_some_and(|s| s.forward.passed && s.composition_ok);
        if !(verify_weight(cfg, &w.plus.element, &w.chi)
            && verify_certificate(cfg, &w.plus)
            && verify_certificate(cfg, &w.minus)
            && series_ok)
        {
            return Err(fail(format!("witness for {beta:?} -> {beta2:?} does not verify")));
        }
        built += 1;
    }
    Ok(format!(
        "{built} witnesses verified out of {tried} candidate pairs; {skipped} skipped above b-degree {WITNESS_DEGREE_BUDGET}"
    ))
}

fn check_specialisations(cfg: &Configuration) -> Result<String> {
    let mut notes = Vec::new();
    let pts: Vec<Vec<BigRational>> = {
        let mut p = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..8 {
            p.push(q(&(0..cfg.d()).map(|_| rng.gen_range(-2..=3)).collect::<Vec<_>>()));
        }
        p
    };
    if matches!(is_normal(cfg), Ok(true)) {
        for a in &pts {
            for b in &pts {
                if classify_normal(cfg, a, b)? != isomorphic(cfg, a, b)? {
                    return Err(fail(format!("normal criterion disagrees on {a:?}, {b:?}")));
                }
            }
        }
        notes.push("normal criterion agrees");
    }
    if let Ok(holes) = curve_holes(cfg) {
        let mut hole_pts: Vec<Vec<BigRational>> = holes.iter().map(|h| q(h)).collect();
        hole_pts.extend(pts.iter().cloned());
        for a in &hole_pts {
            for b in &hole_pts {
                if classify_curve(cfg, a, b)? != isomorphic(cfg, a, b)? {
                    return Err(fail(format!("curve criterion disagrees on {a:?}, {b:?}")));
                }
            }
        }
        notes.push("curve criterion agrees");
    }
    if notes.is_empty() {
        notes.push("neither normal nor a monomial curve");
    }
    Ok(notes.join("; "))
}

fn check_volume(cfg: &Configuration) -> Result<String> {
    let v: BigInt = normalized_volume(cfg)?;
    Ok(format!("normalized volume {v}, equal for two pulling triangulations"))
}

fn check_weyl(rng: &mut ChaCha8Rng) -> Result<String> {
    let n = 2;
    let random = |rng: &mut ChaCha8Rng| -> Weyl<BigRational> {
        let mut w = Weyl::zero(n);
        for _ in 0..4 {
            let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let m: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            w.add_term(a, m, BigRational::from_i64(rng.gen_range(-3..=3)));
        }
        w
    };
    for _ in 0..10 {
        let (p, r, s) = (random(rng), random(rng), random(rng));
        if p.mul(&r).mul(&s) != p.mul(&r.mul(&s)) {
            return Err(fail("Weyl multiplication is not associative".into()));
        }
    }
    Ok("10 random triples associate".into())
}

/// Run every property; `order` is the series truncation for witnesses.
pub fn run_checks(cfg: &Configuration, seed: u64, order: u32) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        outcome("groebner_bases", check_groebner(cfg)),
        outcome("m_chi_and_standard_pairs", check_m_chi(cfg)),
        outcome("b_ideal_shift_law", check_shift_law(cfg)),
        outcome("profile_shift_coherence", check_coherence(cfg, &mut rng)),
        outcome("witness_soundness", check_witnesses(cfg, &mut rng, order)),
        outcome("specialised_criteria", check_specialisations(cfg)),
        outcome("normalized_volume", check_volume(cfg)),
        outcome("weyl_associativity", check_weyl(&mut rng)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_the_four_column_example() {
        let c = Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 0, 1, 2], &[0, 1, 1, 0]]).unwrap();
        for o in run_checks(&c, 1, 4) {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }
}
