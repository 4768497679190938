//! Acceptance suite. Every criterion runs on its own thread and prints one
//! `PASS`/`FAIL` line; the process fails if any criterion does. Reference
//! values come either from the worked examples the library is meant to
//! reproduce, or from brute-force oracles written here independently of the
//! library's algorithms.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use ahg_core::classify::{
    classify_curve, classify_normal, curve_holes, curve_part, enumerate_classes, normalized_volume,
    normalized_volume_with, Curve, CurvePart, PointFilter, Pull,
};
use ahg_core::instances::random_configuration;
use ahg_core::lattice::{rational_i64s, to_rational, LatticeBasis};
use ahg_core::semigroup::{e_tau, facet_value_semigroup, resonance};
use ahg_core::series::{apply_operator, check_solution, phi_v, starting_exponent};
use ahg_core::toric::bideal::two_sided_zero_set;
use ahg_core::toric::{b_ideal, m_chi, MonomialIdeal};
use ahg_core::weyl::{verify_certificate, verify_weight};
use ahg_core::{iso_witness, isomorphic, Configuration, Integer, Rational, Scalar};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// reporting

struct Verdict {
    passed: bool,
    line: String,
}

fn report(label: &str, title: &str, started: Instant, limit: Duration, outcome: Result<String, String>) -> Verdict {
    let elapsed = started.elapsed();
    let outcome = outcome.and_then(|detail| {
        if elapsed <= limit {
            Ok(detail)
        } else {
            Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}"))
        }
    });
    match outcome {
        Ok(detail) => Verdict {
            passed: true,
            line: format!("PASS {label} ({title}): {detail} [{elapsed:.1?}]"),
        },
        Err(detail) => Verdict {
            passed: false,
            line: format!("FAIL {label} ({title}): {detail} [{elapsed:.1?}]"),
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: ahg_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// fixtures

fn four_column() -> Configuration {
    Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 0, 1, 2], &[0, 1, 1, 0]]).unwrap()
}

fn normal_example() -> Configuration {
    Configuration::from_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, -1]]).unwrap()
}

fn curve_example() -> Configuration {
    Configuration::from_rows(&[&[1, 1, 1, 1, 1], &[0, 2, 4, 7, 9]]).unwrap()
}

/// Five seeded random homogeneous matrices, `d ≤ 3`, `n ≤ 5`, entries in `[0, 3]`.
fn random_matrices() -> Vec<Configuration> {
    [(11u64, 2usize, 4usize), (12, 3, 4), (13, 3, 5), (14, 2, 3), (15, 3, 5)]
        .iter()
        .map(|&(seed, d, n)| random_configuration(seed, d, n, 3).unwrap())
        .collect()
}

fn q(v: &[i64]) -> Vec<Rational> {
    rational_i64s(v)
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn column(cfg: &Configuration, j: usize) -> Vec<Rational> {
    cfg.column_rational(j)
}

fn apply_u(cfg: &Configuration, u: &[i64]) -> Vec<Rational> {
    q(&cfg.apply(u))
}

/// All `u ∈ N^n` with `|u| = k`.
fn compositions(n: usize, k: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// oracles

/// `NA` by enumeration of `Au`, `|u| ≤ max_degree`, grouped by degree.
struct SemigroupOracle {
    by_degree: Vec<HashSet<Vec<i64>>>,
}

impl SemigroupOracle {
    fn new(cfg: &Configuration, max_degree: i64) -> Self {
        let by_degree = (0..=max_degree)
            .map(|k| compositions(cfg.n(), k).iter().map(|u| cfg.apply(u)).collect())
            .collect();
        SemigroupOracle { by_degree }
    }

    /// `Some(answer)` when `γ` has degree within the enumerated range.
    fn contains(&self, cfg: &Configuration, gamma: &[Rational]) -> Option<bool> {
        let h = cfg.degree(gamma);
        if !h.is_integer() || h < Rational::zero() || gamma.iter().any(|x| !x.is_integer()) {
            return Some(false);
        }
        let k = h.to_integer().to_string().parse::<usize>().ok()?;
        let point: Vec<i64> = gamma
            .iter()
            .map(|x| x.to_integer().to_string().parse().unwrap())
            .collect();
        self.by_degree.get(k).map(|s| s.contains(&point))
    }
}

/// `E_τ(β)` by enumeration: `λ = β − Σ_{j∉τ} u_j a_j` must lie in
/// `Q(A∩τ)`; the sum `g` of the facet forms through `τ` vanishes there and
/// is positive on the other columns, which bounds `u` by `g(u) = g(β)`.
fn brute_e_tau(cfg: &Configuration, face: usize, beta: &[Rational]) -> Vec<Vec<Rational>> {
    let f = cfg.face(face);
    let outside = f.complement(cfg.n());
    let g: Vec<Rational> = (0..cfg.d())
        .map(|i| {
            f.facets
                .iter()
                .map(|&s| cfg.facets()[s].f[i].clone())
                .fold(Rational::zero(), |a, b| a + b)
        })
        .collect();
    let dot = |x: &[Rational]| -> Rational { g.iter().zip(x).map(|(a, b)| a * b).fold(Rational::zero(), |a, b| a + b) };
    let target = dot(beta);
    let weights: Vec<Rational> = outside.iter().map(|&j| dot(&column(cfg, j))).collect();
    let span = LatticeBasis::from_generators(
        cfg.d(),
        &f.columns.iter().map(|&j| cfg.column_big(j)).collect::<Vec<_>>(),
    );
    let mut found: Vec<Vec<Rational>> = Vec::new();
    let mut counts = vec![0i64; outside.len()];
    fn walk(k: usize, left: &Rational, weights: &[Rational], counts: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
        if k == weights.len() {
            if left.is_zero() {
                visit(counts);
            }
            return;
        }
        let mut rest = left.clone();
        let mut c = 0;
        while rest >= Rational::zero() {
            counts[k] = c;
            walk(k + 1, &rest, weights, counts, visit);
            rest -= &weights[k];
            c += 1;
        }
        counts[k] = 0;
    }
    if target < Rational::zero() || (!target.is_integer() && outside.is_empty()) {
        return found;
    }
    let mut visit = |u: &[i64]| {
        let mut lambda = beta.to_vec();
        for (&j, &c) in outside.iter().zip(u) {
            let col = column(cfg, j);
            for i in 0..cfg.d() {
                lambda[i] -= Rational::from_i64(c) * &col[i];
            }
        }
        if !span.span_contains(&lambda) {
            return;
        }
        if !found.iter().any(|r| span.member(&sub(r, &lambda)).is_some()) {
            found.push(lambda);
        }
    };
    walk(0, &target, &weights, &mut counts, &mut visit);
    found
}

/// Whether two residue lists describe the same cosets of `Z(A∩τ)`.
fn same_cosets(cfg: &Configuration, face: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let f = cfg.face(face);
    let lattice = LatticeBasis::from_generators(
        cfg.d(),
        &f.columns.iter().map(|&j| cfg.column_big(j)).collect::<Vec<_>>(),
    );
    let covered = |x: &[Vec<Rational>], y: &[Vec<Rational>]| {
        x.iter().all(|r| y.iter().any(|s| lattice.member(&sub(r, s)).is_some()))
    };
    a.len() == b.len() && covered(a, b) && covered(b, a)
}

/// Minimal generators of `{u : Au − χ ∈ NA}` of degree at most `cap`, by
/// complete enumeration of `u` degree by degree.
fn brute_m_chi(cfg: &Configuration, chi: &[Rational], oracle: &SemigroupOracle, cap: i64) -> Option<Vec<Vec<u32>>> {
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for k in 0..=cap {
        for u in compositions(cfg.n(), k) {
            if gens.iter().any(|g| g.iter().zip(&u).all(|(a, b)| a <= b)) {
                continue;
            }
            if oracle.contains(cfg, &sub(&apply_u(cfg, &u), chi))? {
                gens.push(u);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = gens.iter().map(|g| g.iter().map(|&x| x as u32).collect()).collect();
    out.sort();
    Some(out)
}

/// Whether `u` is a minimal element of `{u : Au − χ ∈ NA}`: it belongs, and
/// no `u − e_j` does (the set is closed upwards).
fn minimal_in_m_chi(cfg: &Configuration, chi: &[Rational], u: &[u32]) -> ahg_core::Result<bool> {
    let member = |v: &[i64]| -> ahg_core::Result<bool> { Ok(cfg.in_na(&sub(&apply_u(cfg, v), chi))?.is_some()) };
    let u: Vec<i64> = u.iter().map(|&x| x as i64).collect();
    if !member(&u)? {
        return Ok(false);
    }
    for j in 0..u.len() {
        if u[j] > 0 {
            let mut v = u.clone();
            v[j] -= 1;
            if member(&v)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `β ∈ V(B_χ)` through the distraction of `M_χ`: its zero set is the
/// union of `{θ : θ_j = w_j, j ∉ τ}` over all `(w, τ)` with `w + N^τ`
/// disjoint from `M_χ`, for arbitrary column sets `τ`; `β` is in the image
/// under `A` when `β − Σ_{j∉τ} w_j a_j` lies in `span(a_j : j ∈ τ)`.
fn distraction_member(cfg: &Configuration, m: &MonomialIdeal, beta: &[Rational]) -> bool {
    let n = cfg.n();
    if m.gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return false;
    }
    let caps: Vec<u32> = (0..n).map(|j| m.gens.iter().map(|g| g[j]).max().unwrap_or(0)).collect();
    for mask in 0u32..(1 << n) {
        let tau: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
        let outside: Vec<usize> = (0..n).filter(|j| mask & (1 << j) == 0).collect();
        // `w_j ≥ caps_j` for some j ∉ τ is covered by the larger set τ ∪ {j}
        if outside.iter().any(|&j| caps[j] == 0) {
            continue;
        }
        let directions: Vec<Vec<Integer>> = tau.iter().map(|&j| cfg.column_big(j)).collect();
        let span = LatticeBasis::from_generators(cfg.d(), &directions);
        let mut w = vec![0u32; outside.len()];
        loop {
            let avoids = !m.gens.iter().any(|g| outside.iter().zip(&w).all(|(&j, &x)| g[j] <= x));
            if avoids {
                let mut rest = beta.to_vec();
                for (&j, &x) in outside.iter().zip(&w) {
                    let col = column(cfg, j);
                    for i in 0..cfg.d() {
                        rest[i] -= Rational::from_i64(x as i64) * &col[i];
                    }
                }
                if span.span_contains(&rest) {
                    return true;
                }
            }
            let mut k = 0;
            while k < w.len() {
                w[k] += 1;
                if w[k] < caps[outside[k]] {
                    break;
                }
                w[k] = 0;
                k += 1;
            }
            if k == w.len() {
                break;
            }
        }
    }
    false
}

fn semi_nonresonant_beta(cfg: &Configuration, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    loop {
        let beta: Vec<Rational> = (0..cfg.d())
            .map(|_| Rational::new(rng.gen_range(-20..=20).into(), [3, 5, 7][rng.gen_range(0..3)].into()))
            .collect();
        if resonance(cfg, &beta).unwrap().semi_nonresonant {
            return beta;
        }
    }
}

/// Columns, their negatives and pairwise differences.
fn small_moves(cfg: &Configuration) -> Vec<Vec<i64>> {
    let n = cfg.n();
    let mut moves = Vec::new();
    for i in 0..n {
        moves.push(cfg.column(i).to_vec());
        moves.push(cfg.column(i).iter().map(|x| -x).collect());
        for j in 0..n {
            if i != j {
                moves.push(cfg.column(i).iter().zip(cfg.column(j)).map(|(a, b)| a - b).collect());
            }
        }
    }
    moves.sort();
    moves.dedup();
    moves
}

// ---------------------------------------------------------------------------
// criterion 1

fn criterion_1_four_column_example() -> Verdict {
    let started = Instant::now();
    let outcome = (|| -> Result<String, String> {
        let c = four_column();
        let sigma = c.faces().index_of(&[0, 3]).ok_or("face {1,4} missing")?;
        let expected_two = vec![q(&[0, 0, 0]), q(&[1, 1, 0])];
        for j in [1, 2] {
            let e = core(e_tau(&c, sigma, &column(&c, j)))?;
            ensure(same_cosets(&c, sigma, &e.residues, &expected_two), || {
                format!("E_{{1,4}}(a_{}) = {:?}", j + 1, e.residues)
            })?;
        }
        for x in 0..4 {
            for y in 0..4 {
                let beta = q(&[x + y, 2 * y, 0]);
                let e = core(e_tau(&c, sigma, &beta))?;
                ensure(same_cosets(&c, sigma, &e.residues, &[q(&[0, 0, 0])]), || {
                    format!("E_{{1,4}}({beta:?}) = {:?}", e.residues)
                })?;
            }
        }
        let classes = core(enumerate_classes(
            &c,
            &[(0, 6), (0, 6), (0, 6)],
            &q(&[0, 0, 0]),
            PointFilter::Semigroup,
        ))?;
        ensure(classes.len() == 2, || {
            format!("{} classes in NA ∩ [0,6]^3", classes.len())
        })?;
        Ok(format!(
            "E_{{1,4}} matches on a_2, a_3 and 16 points of Na_1+Na_4; {} classes over {} semigroup points",
            classes.len(),
            classes.iter().map(|(k, _)| k.size).sum::<usize>()
        ))
    })();
    report(
        "criterion 1",
        "four-column example",
        started,
        Duration::from_secs(10),
        outcome,
    )
}

// ---------------------------------------------------------------------------
// criterion 2

fn criterion_2_normal_example_has_fourteen_classes() -> Verdict {
    let started = Instant::now();
    let outcome = (|| -> Result<String, String> {
        let c = normal_example();
        let classes = core(enumerate_classes(
            &c,
            &[(-3, 3), (-3, 3), (-3, 3)],
            &q(&[0, 0, 0]),
            PointFilter::All,
        ))?;
        ensure(classes.len() == 14, || format!("{} classes", classes.len()))?;
        // representative and the signs of β1, β2, β1+β3, β2+β3 (true = "≥ 0")
        let listed: [([i64; 3], [bool; 4]); 14] = [
            ([0, 0, 0], [true, true, true, true]),
            ([-1, 0, 1], [false, true, true, true]),
            ([0, -1, 1], [true, false, true, true]),
            ([0, 1, -1], [true, true, false, true]),
            ([1, 0, -1], [true, true, true, false]),
            ([-1, -1, 1], [false, false, true, true]),
            ([-1, 0, 0], [false, true, false, true]),
            ([0, -1, 0], [true, false, true, false]),
            ([0, 0, -1], [true, true, false, false]),
            ([-2, -1, 1], [false, false, false, true]),
            ([-1, -2, 1], [false, false, true, false]),
            ([-1, 0, -1], [false, true, false, false]),
            ([0, -1, -1], [true, false, false, false]),
            ([-1, -1, 0], [false, false, false, false]),
        ];
        let signs = |b: &[i64]| [b[0] >= 0, b[1] >= 0, b[0] + b[2] >= 0, b[1] + b[2] >= 0];
        for (rep, sign) in &listed {
            ensure(signs(rep) == *sign, || {
                format!("{rep:?} does not satisfy its listed conditions")
            })?;
            let (class, members) = classes
                .iter()
                .find(|(_, m)| m.contains(&rep.to_vec()))
                .ok_or_else(|| format!("{rep:?} not enumerated"))?;
            ensure(members.iter().all(|m| signs(m) == *sign), || {
                format!("class of {rep:?} (size {}) mixes sign patterns", class.size)
            })?;
        }
        let reps: BTreeSet<_> = listed.iter().map(|(r, _)| r.to_vec()).collect();
        ensure(reps.len() == 14, || "listed representatives repeat".into())?;
        let mut pairs = 0;
        for (a, _) in &listed {
            for (b, _) in &listed {
                let (x, y) = (q(a), q(b));
                ensure(
                    core(classify_normal(&c, &x, &y))? == core(isomorphic(&c, &x, &y))?,
                    || format!("criteria disagree on {a:?}, {b:?}"),
                )?;
                pairs += 1;
            }
        }
        Ok(format!(
            "14 classes, each listed sign pattern matches its class; {pairs} representative pairs agree"
        ))
    })();
    report(
        "criterion 2",
        "normal example",
        started,
        Duration::from_secs(30),
        outcome,
    )
}

// ---------------------------------------------------------------------------
// criterion 3

fn criterion_3_curve_example_holes_and_parts() -> Verdict {
    let started = Instant::now();
    let outcome = (|| -> Result<String, String> {
        let c = curve_example();
        let curve = core(Curve::new(&c))?;
        // σ1 is the facet through a_1 = (1, 0), with F(β) = β2
        let by_value = |target: &[i64]| -> Result<usize, String> {
            (0..c.facets().len())
                .find(|&s| {
                    c.facets()[s].values.iter().map(|v| v.to_string()).collect::<Vec<_>>()
                        == target.iter().map(|v| v.to_string()).collect::<Vec<_>>()
                })
                .ok_or_else(|| format!("no facet with values {target:?}"))
        };
        let s1 = by_value(&[0, 2, 4, 7, 9])?;
        let s2 = by_value(&[9, 7, 5, 2, 0])?;
        let g1 = core(facet_value_semigroup(&c, s1))?.gaps;
        let g2 = core(facet_value_semigroup(&c, s2))?.gaps;
        ensure(g1 == vec![1, 3, 5], || format!("gaps of F_σ1(NA): {g1:?}"))?;
        ensure(g2 == vec![1, 3], || format!("gaps of F_σ2(NA): {g2:?}"))?;
        let holes = core(curve_holes(&c))?;
        ensure(holes == vec![vec![2, 10], vec![2, 12], vec![3, 19]], || {
            format!("holes {holes:?}")
        })?;

        let in1 = |x: i64| x >= 0 && !g1.contains(&(x as u64));
        let in2 = |x: i64| x >= 0 && !g2.contains(&(x as u64));
        let oracle = SemigroupOracle::new(&c, 4);
        let mut points = Vec::new();
        for b1 in 0..=4 {
            for b2 in 0..=25 {
                let beta = vec![b1, b2];
                let (m1, m2) = (in1(b2), in2(9 * b1 - b2));
                let in_na = oracle.contains(&c, &q(&beta)).unwrap();
                let is_hole = holes.contains(&beta);
                // exactly one of the five parts
                let parts = [in_na, m1 && !m2, !m1 && m2, !m1 && !m2, is_hole];
                ensure(parts.iter().filter(|&&p| p).count() == 1, || {
                    format!("{beta:?} lies in parts {parts:?}")
                })?;
                let expected = match parts.iter().position(|&p| p).unwrap() {
                    0 => CurvePart::Semigroup,
                    1 => CurvePart::FirstOnly,
                    2 => CurvePart::SecondOnly,
                    3 => CurvePart::Neither,
                    _ => CurvePart::Hole,
                };
                let got = core(curve_part(&curve, &holes, &c, &beta))?;
                ensure(got == expected, || {
                    format!("{beta:?}: part {got:?}, expected {expected:?}")
                })?;
                points.push((beta, expected));
            }
        }
        let mut pairs = 0;
        for (a, pa) in &points {
            for (b, pb) in &points {
                let (x, y) = (q(a), q(b));
                let iso = core(isomorphic(&c, &x, &y))?;
                ensure(iso == (pa == pb), || {
                    format!("isomorphic({a:?}, {b:?}) = {iso}, parts {pa:?} {pb:?}")
                })?;
                ensure(core(classify_curve(&c, &x, &y))? == iso, || {
                    format!("curve criterion disagrees on {a:?}, {b:?}")
                })?;
                pairs += 1;
            }
        }
        Ok(format!(
            "gaps {{1,3,5}} and {{1,3}}, holes {holes:?}, {} points and {pairs} pairs consistent",
            points.len()
        ))
    })();
    report(
        "criterion 3",
        "monomial curve example",
        started,
        Duration::from_secs(10),
        outcome,
    )
}

// ---------------------------------------------------------------------------
// criterion 4

/// Witnesses whose two b-polynomials together exceed this degree are not
/// sampled: their operators run to thousands of terms.
const WITNESS_DEGREE_BUDGET: usize = 10;

fn witness_degree(cfg: &Configuration, beta: &[Rational], chi: &[Rational]) -> Option<usize> {
    let neg: Vec<Rational> = chi.iter().map(|x| -x).collect();
    let plus = b_ideal(cfg, chi).ok()?.b_poly_avoiding(cfg, &add(beta, chi))?;
    let minus = b_ideal(cfg, &neg).ok()?.b_poly_avoiding(cfg, beta)?;
    Some(plus.degree() + minus.degree())
}

fn criterion_4_witness_soundness() -> Verdict {
    let started = Instant::now();
    let outcome = (|| -> Result<String, String> {
        let mut matrices = vec![four_column(), normal_example(), curve_example()];
        matrices.extend(random_matrices());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (mut total, mut rational, mut skipped) = (0, 0, 0);
        for c in &matrices {
            let moves = small_moves(c);
            let mut built = 0;
            let mut attempts = 0;
            while built < 7 && attempts < 400 {
                attempts += 1;
                let use_rational = attempts % 3 == 0;
                let beta = if use_rational {
                    semi_nonresonant_beta(c, &mut rng)
                } else {
                    q(&(0..c.d()).map(|_| rng.gen_range(-2..=3)).collect::<Vec<_>>())
                };
                let chi = q(&moves[rng.gen_range(0..moves.len())]);
                let beta2 = add(&beta, &chi);
                if !core(isomorphic(c, &beta, &beta2))? {
                    continue;
                }
                match witness_degree(c, &beta, &chi) {
                    Some(k) if k <= WITNESS_DEGREE_BUDGET => {}
                    Some(_) => {
                        skipped += 1;
                        continue;
                    }
                    None => return Err(format!("no avoiding b-polynomial for {beta:?} -> {beta2:?}")),
                }
                let w = core(iso_witness(c, &beta, &beta2, Some(8)))?;
                let neg: Vec<Rational> = chi.iter().map(|x| -x).collect();
                ensure(!w.scalar.is_zero(), || "zero scalar".into())?;
                ensure(
                    verify_weight(c, &w.plus.element, &chi) && verify_weight(c, &w.minus.element, &neg),
                    || format!("weights fail for {beta:?} -> {beta2:?}"),
                )?;
                ensure(
                    verify_certificate(c, &w.plus) && verify_certificate(c, &w.minus),
                    || format!("certificates fail for {beta:?} -> {beta2:?}"),
                )?;
                let s = w.series.as_ref().ok_or("no series check")?;
                ensure(s.forward.passed && s.composition_ok, || {
                    format!("series check fails for {beta:?} -> {beta2:?}")
                })?;
                // the literal form: φ_v through order 8, image checked through 8 − deg
                let v = core(starting_exponent(c, &beta))?;
                let phi = core(phi_v(c, &v, 8))?;
                let image = apply_operator(&w.plus.element, &phi);
                let r = core(check_solution(c, &beta2, &image))?;
                let deg = w.plus.element.d_degree() as i64;
                ensure(r.euler_exact && r.passed && r.vanishing_through >= 8 - deg, || {
                    format!("residual of P_plus φ_v for {beta:?} -> {beta2:?}: {r:?}")
                })?;
                built += 1;
                total += 1;
                if use_rational {
                    rational += 1;
                }
            }
        }
        ensure(total >= 50, || format!("only {total} witnessed pairs"))?;
        Ok(format!(
            "{total} pairs over {} matrices ({rational} with semi-nonresonant rational β); {skipped} candidates above b-degree {WITNESS_DEGREE_BUDGET} not sampled",
            matrices.len()
        ))
    })();
    report(
        "criterion 4",
        "witness soundness",
        started,
        Duration::from_secs(300),
        outcome,
    )
}

// ---------------------------------------------------------------------------
// criterion 5

fn criterion_5_oracle_equivalence() -> Verdict {
    let started = Instant::now();
    let outcome = (|| -> Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut matrices = vec![four_column(), normal_example(), curve_example()];
        matrices.extend(random_matrices());

        // E_τ against enumeration
        let mut e_checked = 0;
        while e_checked < 200 {
            let c = &matrices[rng.gen_range(0..matrices.len())];
            let face = rng.gen_range(0..c.faces().len());
            let beta = q(&(0..c.d()).map(|_| rng.gen_range(-3..=6)).collect::<Vec<_>>());
            let fast = core(e_tau(c, face, &beta))?;
            let slow = brute_e_tau(c, face, &beta);
            ensure(same_cosets(c, face, &fast.residues, &slow), || {
                format!(
                    "E_τ mismatch for A = {:?}, τ = {}, β = {beta:?}: {:?} vs {:?}",
                    c.matrix(),
                    c.face(face).label(),
                    fast.residues,
                    slow
                )
            })?;
            e_checked += 1;
        }

        // NA membership against enumeration, all γ of degree ≤ 8 in a box
        let mut na_checked = 0;
        for c in &matrices {
            let oracle = SemigroupOracle::new(c, 8);
            let bound: i64 = (0..c.n())
                .flat_map(|j| c.column(j).iter().map(|x| x.abs()))
                .max()
                .unwrap()
                * 8
                + 1;
            let mut points = vec![Vec::new()];
            for _ in 0..c.d() {
                points = points
                    .into_iter()
                    .flat_map(|p: Vec<i64>| {
                        (-bound..=bound).map(move |x| {
                            let mut p = p.clone();
                            p.push(x);
                            p
                        })
                    })
                    .collect();
            }
            for p in points {
                let gamma = q(&p);
                let h = c.degree(&gamma);
                if !h.is_integer() || h < Rational::zero() || h > Rational::from_i64(8) {
                    continue;
                }
                let expected = oracle.contains(c, &gamma).unwrap();
                let got = core(c.in_na(&gamma))?;
                ensure(got.is_some() == expected, || {
                    format!("NA membership of {p:?} for {:?}", c.matrix())
                })?;
                if let Some(u) = got {
                    let u: Vec<i64> = u.iter().map(|&x| x as i64).collect();
                    ensure(c.apply(&u) == p, || format!("bad NA certificate for {p:?}"))?;
                }
                na_checked += 1;
            }
        }

        // M_χ against complete enumeration through degree 10; generators
        // beyond that are checked for membership and minimality directly
        const CAP: i64 = 10;
        let oracles: Vec<SemigroupOracle> = matrices.iter().map(|c| SemigroupOracle::new(c, CAP + 6)).collect();
        let (mut m_checked, mut high) = (0, 0);
        while m_checked < 50 {
            let k = rng.gen_range(0..matrices.len());
            let c = &matrices[k];
            let w: Vec<i64> = (0..c.n()).map(|_| rng.gen_range(-1..=1)).collect();
            let chi = apply_u(c, &w);
            let fast = core(m_chi(c, &chi))?;
            let (mut low, above): (Vec<Vec<u32>>, Vec<Vec<u32>>) = fast
                .gens
                .iter()
                .cloned()
                .partition(|g| g.iter().map(|&x| x as i64).sum::<i64>() <= CAP);
            low.sort();
            let slow = brute_m_chi(c, &chi, &oracles[k], CAP).ok_or("enumeration range too small")?;
            ensure(low == slow, || {
                format!(
                    "M_χ mismatch for χ = {chi:?}, A = {:?}: {low:?} vs {slow:?}",
                    c.matrix()
                )
            })?;
            for g in &above {
                ensure(core(minimal_in_m_chi(c, &chi, g))?, || {
                    format!("{g:?} is not a minimal generator of M_χ, χ = {chi:?}")
                })?;
            }
            high += above.len();
            m_checked += 1;
        }
        Ok(format!("{e_checked} E_τ instances, {na_checked} NA memberships, {m_checked} monomial ideals agree ({high} generators above degree {CAP} checked for minimality)"))
    })();
    report(
        "criterion 5",
        "oracle equivalence",
        started,
        Duration::from_secs(300),
        outcome,
    )
}

// ---------------------------------------------------------------------------
// criterion 6

fn criterion_6_b_ideal_structure() -> Verdict {
    let started = Instant::now();
    let outcome = (|| -> Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let matrices = [four_column(), normal_example(), curve_example()];
        let mut memberships = 0;
        let mut members_found = 0;
        for round in 0..30 {
            let c = &matrices[round % matrices.len()];
            let w: Vec<i64> = (0..c.n()).map(|_| rng.gen_range(-1..=2)).collect();
            let chi = apply_u(c, &w);
            let ideal = core(b_ideal(c, &chi))?;
            let mut samples: Vec<Vec<Rational>> = Vec::new();
            for comp in ideal.components.iter().take(10) {
                let mut p = to_rational(&comp.point);
                for &j in &c.face(comp.face).columns {
                    let t = Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into());
                    p = add(&p, &column(c, j).iter().map(|x| x * &t).collect::<Vec<_>>());
                }
                samples.push(p);
            }
            while samples.len() < 20 {
                let p = if samples.len().is_multiple_of(2) {
                    q(&(0..c.d()).map(|_| rng.gen_range(-3..=8)).collect::<Vec<_>>())
                } else {
                    (0..c.d())
                        .map(|_| Rational::new(rng.gen_range(-9..=9).into(), 2.into()))
                        .collect()
                };
                samples.push(p);
            }
            for p in &samples {
                let fast = ideal.v_b_member(p);
                let slow = distraction_member(c, &ideal.monomial, p);
                ensure(fast == slow, || {
                    format!("V(B_χ) membership of {p:?} for χ = {chi:?}, A = {:?}", c.matrix())
                })?;
                memberships += 1;
                members_found += fast as usize;
            }
        }

        // V(B_{χ+χ′}) = V(B_χ) ∪ (V(B_{χ′}) + χ) for χ, χ′ ∈ NA
        let mut shift_laws = 0;
        for c in &matrices {
            for _ in 0..4 {
                let u: Vec<i64> = (0..c.n()).map(|_| rng.gen_range(0..=1)).collect();
                let v: Vec<i64> = (0..c.n()).map(|_| rng.gen_range(0..=1)).collect();
                let (chi, chi2) = (apply_u(c, &u), apply_u(c, &v));
                let lhs = core(b_ideal(c, &add(&chi, &chi2)))?.zero_set(c);
                let rhs = core(b_ideal(c, &chi))?
                    .zero_set(c)
                    .union(&core(b_ideal(c, &chi2))?.zero_set(c).translate(&chi));
                ensure(lhs == rhs, || format!("shift law fails for χ = {chi:?}, χ′ = {chi2:?}"))?;
                shift_laws += 1;
            }
        }

        // V(B_{−χ,χ}) = (V(B_χ) − χ) ∪ V(B_{−χ}), tested pointwise against
        // the distraction oracle and against the avoidance construction
        let mut two_sided = 0;
        for c in &matrices {
            for _ in 0..4 {
                let w: Vec<i64> = (0..c.n()).map(|_| rng.gen_range(-1..=1)).collect();
                let chi = apply_u(c, &w);
                let neg: Vec<Rational> = chi.iter().map(|x| -x).collect();
                let arrangement = core(two_sided_zero_set(c, &chi))?;
                let (plus, minus) = (core(b_ideal(c, &chi))?, core(b_ideal(c, &neg))?);
                for _ in 0..20 {
                    let beta = q(&(0..c.d()).map(|_| rng.gen_range(-4..=6)).collect::<Vec<_>>());
                    let inside = arrangement.contains_point(&beta);
                    let oracle = distraction_member(c, &plus.monomial, &add(&beta, &chi))
                        || distraction_member(c, &minus.monomial, &beta);
                    let avoidable = plus.b_poly_avoiding(c, &add(&beta, &chi)).is_some()
                        && minus.b_poly_avoiding(c, &beta).is_some();
                    ensure(inside == oracle && inside != avoidable, || {
                        format!("two-sided zero set disagrees at {beta:?} for χ = {chi:?}")
                    })?;
                    two_sided += 1;
                }
            }
        }
        Ok(format!(
            "{memberships} sampled memberships ({members_found} inside), {shift_laws} shift laws, {two_sided} two-sided points"
        ))
    })();
    report(
        "criterion 6",
        "b-ideal structure",
        started,
        Duration::from_secs(120),
        outcome,
    )
}

// ---------------------------------------------------------------------------
// criterion 7

fn criterion_7_nonresonant_coset_law() -> Verdict {
    let started = Instant::now();
    let outcome = (|| -> Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let matrices = [four_column(), normal_example(), curve_example()];
        let mut same = 0;
        let mut different = 0;
        for k in 0..20 {
            let c = &matrices[k % matrices.len()];
            let beta = semi_nonresonant_beta(c, &mut rng);
            // the law needs both ends semi-nonresonant
            let semi = |b: &[Rational]| resonance(c, b).map(|r| r.semi_nonresonant);
            let mut shifts = 0;
            while shifts < 3 {
                let w: Vec<i64> = (0..c.n()).map(|_| rng.gen_range(-2..=2)).collect();
                let chi = apply_u(c, &w);
                let beta2 = add(&beta, &chi);
                if !core(semi(&beta2))? {
                    continue;
                }
                ensure(core(isomorphic(c, &beta, &beta2))?, || {
                    format!("β = {beta:?} and β + {chi:?} are not isomorphic")
                })?;
                shifts += 1;
                same += 1;
            }
            // a shift by a rational vector outside ZA
            let off = loop {
                let mut off = vec![Rational::zero(); c.d()];
                off[rng.gen_range(0..c.d())] = Rational::new((2 * rng.gen_range(0..3) + 1).into(), 2.into());
                if core(semi(&add(&beta, &off)))? {
                    break off;
                }
            };
            ensure(!c.in_za(&off), || "shift unexpectedly in ZA".into())?;
            ensure(!core(isomorphic(c, &beta, &add(&beta, &off)))?, || {
                format!("β = {beta:?} isomorphic across cosets")
            })?;
            different += 1;
        }
        Ok(format!(
            "{same} same-coset pairs isomorphic, {different} cross-coset pairs not"
        ))
    })();
    report(
        "criterion 7",
        "nonresonant coset law",
        started,
        Duration::from_secs(60),
        outcome,
    )
}

// ---------------------------------------------------------------------------
// volume, substituting for a rank statement

fn normalized_volume_of_the_curve_is_its_degree() -> Verdict {
    let started = Instant::now();
    let outcome = (|| -> Result<String, String> {
        let c = curve_example();
        let first = core(normalized_volume_with(&c, Pull::First))?;
        let last = core(normalized_volume_with(&c, Pull::Last))?;
        ensure(first == last, || format!("triangulations disagree: {first} vs {last}"))?;
        ensure(core(normalized_volume(&c))? == Integer::from(9), || {
            "volume is not 9".into()
        })?;
        let four = core(normalized_volume(&four_column()))?;
        Ok(format!(
            "curve volume 9 from both pulling orders; four-column volume {four}"
        ))
    })();
    report(
        "volume check",
        "normalized volume",
        started,
        Duration::from_secs(10),
        outcome,
    )
}

fn main() {
    let criteria: [fn() -> Verdict; 8] = [
        criterion_1_four_column_example,
        criterion_2_normal_example_has_fourteen_classes,
        criterion_3_curve_example_holes_and_parts,
        criterion_4_witness_soundness,
        criterion_5_oracle_equivalence,
        criterion_6_b_ideal_structure,
        criterion_7_nonresonant_coset_law,
        normalized_volume_of_the_curve_is_its_degree,
    ];
    let verdicts: Vec<Verdict> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria.iter().map(|run| scope.spawn(run)).collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| Verdict {
                    passed: false,
                    line: "FAIL: a criterion panicked".into(),
                })
            })
            .collect()
    });
    for v in &verdicts {
        println!("{}", v.line);
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
