//! One function per subcommand. Each returns the echoed input, the
//! result and diagnostics; the caller wraps them in the envelope.

use ahg_core::checks::run_checks;
use ahg_core::classify::{
    classify_curve, classify_normal, curve_holes, differing_face, enumerate_classes, laurent_solution_faces,
    normalized_volume, pulling_triangulation, shift_exponents, Curve, PointFilter, Pull,
};
use ahg_core::instances::random_configuration;
use ahg_core::semigroup::{is_normal, resonance};
use ahg_core::toric::{b_ideal, Binomial};
use ahg_core::weyl::{contiguity_operator, verify_certificate, verify_weight, SymmetryOperator};
use ahg_core::{e_profile, iso_witness, Configuration, Error, Rational, Scalar};
use serde_json::{json, Value};

use crate::input::{configuration, parse_box, parse_vector, read_matrix, InputError};
use crate::output::{columns, face, integer, rational, rationals, small, smalls};

/// Why a command failed.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Input(e) => e.code(),
            CliError::Core(e) => e.code(),
        }
    }

    /// 1 for internal faults, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 1,
            _ => 2,
        }
    }
}

/// What a command produced.
pub struct Outcome {
    pub input: Value,
    pub result: Value,
    pub diagnostics: Vec<String>,
    /// Exit status for a completed run (the `check` command reports
    /// failing properties with 1).
    pub status: i32,
}

impl Outcome {
    fn ok(input: Value, result: Value) -> Self {
        Outcome {
            input,
            result,
            diagnostics: Vec::new(),
            status: 0,
        }
    }
}

type CmdResult = Result<Outcome, CliError>;

/// A parsed matrix together with its echo.
pub struct Loaded {
    pub rows: Vec<Vec<i64>>,
    pub cfg: Configuration,
}

pub fn load(arg: &str) -> Result<Loaded, CliError> {
    let rows = read_matrix(arg)?;
    let cfg = configuration(&rows)?;
    Ok(Loaded { rows, cfg })
}

fn parameter(cfg: &Configuration, text: &str) -> Result<Vec<Rational>, CliError> {
    let v = parse_vector(text)?;
    cfg.check_parameter(&v)?;
    Ok(v)
}

fn binomial(b: &Binomial) -> String {
    let mono = |e: &[u32]| -> String {
        let s: String = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    format!("d{}", i + 1)
                } else {
                    format!("d{}^{k}", i + 1)
                }
            })
            .collect();
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    };
    format!("{} - {}", mono(&b.plus), mono(&b.minus))
}

fn operator(cfg: &Configuration, op: &SymmetryOperator<Rational>) -> Value {
    json!({
        "operator": op.element.to_string(),
        "b": op.b.to_string(),
        "shift_plus": op.shift_plus,
        "shift_minus": op.shift_minus,
        "certificate": op.certificate.pairs.iter().map(|(q, g)| json!({
            "cofactor": q.to_string(),
            "binomial": binomial(g),
        })).collect::<Vec<_>>(),
        "weight_ok": verify_weight(cfg, &op.element, &op.chi),
        "certificate_ok": verify_certificate(cfg, op),
    })
}

pub fn faces(m: &Loaded) -> CmdResult {
    let cfg = &m.cfg;
    let facets: Vec<Value> = cfg
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "index": i + 1,
                "form": rationals(&f.f),
                "columns": columns(&f.zero_columns),
                "values": f.values.iter().map(integer).collect::<Vec<_>>(),
            })
        })
        .collect();
    let lattice = cfg.faces();
    let result = json!({
        "facets": facets,
        "faces": lattice.faces.iter().map(face).collect::<Vec<_>>(),
        "face_count": lattice.len(),
        "normal": is_normal(cfg)?,
    });
    Ok(Outcome::ok(json!({ "A": m.rows }), result))
}

pub fn esets(m: &Loaded, b: &str) -> CmdResult {
    let cfg = &m.cfg;
    let beta = parameter(cfg, b)?;
    let profile = e_profile(cfg, &beta)?;
    let res = resonance(cfg, &beta)?;
    let result = json!({
        "faces": profile.sets.iter().map(|s| json!({
            "face": face(&s.face),
            "residues": s.residues.iter().map(|r| rationals(r)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "nonresonant": res.nonresonant,
        "semi_nonresonant": res.semi_nonresonant,
        "in_semigroup": cfg.in_na(&beta)?.is_some(),
    });
    Ok(Outcome::ok(json!({ "A": m.rows, "b": rationals(&beta) }), result))
}

pub fn classify(m: &Loaded, b: &str, b2: &str) -> CmdResult {
    let cfg = &m.cfg;
    let beta = parameter(cfg, b)?;
    let beta2 = parameter(cfg, b2)?;
    let witness_face = differing_face(cfg, &beta, &beta2)?;
    let differing = match witness_face {
        Some(i) => {
            let (p, q) = (e_profile(cfg, &beta)?, e_profile(cfg, &beta2)?);
            json!({
                "face": face(cfg.face(i)),
                "residues_b": p.sets[i].residues.iter().map(|r| rationals(r)).collect::<Vec<_>>(),
                "residues_b2": q.sets[i].residues.iter().map(|r| rationals(r)).collect::<Vec<_>>(),
            })
        }
        None => Value::Null,
    };
    let normal = if is_normal(cfg)? {
        json!(classify_normal(cfg, &beta, &beta2)?)
    } else {
        Value::Null
    };
    let curve = match classify_curve(cfg, &beta, &beta2) {
        Ok(v) => json!(v),
        Err(Error::NotCurve(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let result = json!({
        "isomorphic": witness_face.is_none(),
        "differing_face": differing,
        "normal_criterion": normal,
        "curve_criterion": curve,
    });
    Ok(Outcome::ok(
        json!({ "A": m.rows, "b": rationals(&beta), "b2": rationals(&beta2) }),
        result,
    ))
}

pub fn witness(m: &Loaded, b: &str, b2: &str, order: u32) -> CmdResult {
    let cfg = &m.cfg;
    let beta = parameter(cfg, b)?;
    let beta2 = parameter(cfg, b2)?;
    let w = iso_witness(cfg, &beta, &beta2, Some(order))?;
    let mut diagnostics = Vec::new();
    let series = match &w.series {
        Some(s) => {
            diagnostics.push(format!(
                "series truncated at order {}; forward residual checked through grade {}, composition through grade {}",
                s.order, s.forward.checked_through, s.composition_through
            ));
            json!({
                "order": s.order,
                "forward_checked_through": s.forward.checked_through,
                "forward_vanishing_through": s.forward.vanishing_through,
                "forward_euler_exact": s.forward.euler_exact,
                "forward_passed": s.forward.passed,
                "composition_through": s.composition_through,
                "composition_ok": s.composition_ok,
            })
        }
        None => Value::Null,
    };
    let result = json!({
        "chi": rationals(&w.chi),
        "p_plus": w.p_plus.to_string(),
        "p_minus": w.p_minus.to_string(),
        "scalar": rational(&w.scalar),
        "plus": operator(cfg, &w.plus),
        "minus": operator(cfg, &w.minus),
        "series": series,
    });
    Ok(Outcome {
        input: json!({ "A": m.rows, "b": rationals(&beta), "b2": rationals(&beta2), "order": order }),
        result,
        diagnostics,
        status: 0,
    })
}

pub fn enumerate(m: &Loaded, bounds: &str, offset: Option<&str>, semigroup: bool, members: bool) -> CmdResult {
    let cfg = &m.cfg;
    let bounds = parse_box(bounds)?;
    let offset = match offset {
        Some(t) => parameter(cfg, t)?,
        None => vec![Rational::from_i64(0); cfg.d()],
    };
    let filter = if semigroup {
        PointFilter::Semigroup
    } else {
        PointFilter::All
    };
    let classes = enumerate_classes(cfg, &bounds, &offset, filter)?;
    let points: usize = classes.iter().map(|(c, _)| c.size).sum();
    let result = json!({
        "class_count": classes.len(),
        "point_count": points,
        "classes": classes.iter().map(|(c, mem)| {
            let mut v = json!({
                "representative": smalls(&c.representative),
                "size": c.size,
                "nonempty_faces": c.profile.sets.iter().filter(|s| !s.is_empty()).map(|s| json!({
                    "columns": columns(&s.face.columns),
                    "residues": s.residues.iter().map(|r| rationals(r)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            if members {
                v["members"] = json!(mem.iter().map(|p| smalls(p)).collect::<Vec<_>>());
            }
            v
        }).collect::<Vec<_>>(),
    });
    let input = json!({
        "A": m.rows,
        "box": bounds.iter().map(|(lo, hi)| format!("{lo}:{hi}")).collect::<Vec<_>>().join(","),
        "offset": rationals(&offset),
        "semigroup_only": semigroup,
    });
    Ok(Outcome::ok(input, result))
}

pub fn holes(m: &Loaded) -> CmdResult {
    let cfg = &m.cfg;
    let curve = Curve::new(cfg)?;
    let holes = curve_holes(cfg)?;
    let semigroup = |s: &ahg_core::semigroup::NumericalSemigroup, facet: usize| {
        json!({
            "facet": facet + 1,
            "generators": s.generators,
            "gaps": s.gaps,
            "frobenius": s.frobenius,
        })
    };
    let result = json!({
        "holes": holes.iter().map(|h| smalls(h)).collect::<Vec<_>>(),
        "degrees": smalls(&curve.degrees),
        "facet_semigroups": [
            semigroup(&curve.first, curve.first_facet),
            semigroup(&curve.second, curve.second_facet),
        ],
    });
    Ok(Outcome::ok(json!({ "A": m.rows }), result))
}

pub fn bideal(m: &Loaded, chi: &str, b: Option<&str>) -> CmdResult {
    let cfg = &m.cfg;
    let chi = parameter(cfg, chi)?;
    let ideal = b_ideal(cfg, &chi)?;
    let mut result = json!({
        "unit": ideal.is_unit(),
        "monomial_generators": ideal.monomial.gens,
        "standard_pairs": ideal.pairs.iter().map(|p| json!({
            "u": p.u,
            "tau": columns(&p.tau),
        })).collect::<Vec<_>>(),
        "components": ideal.components.iter().map(|c| json!({
            "point": c.point.iter().map(integer).collect::<Vec<_>>(),
            "face": columns(&cfg.face(c.face).columns),
            "forms": c.forms.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    let mut input = json!({ "A": m.rows, "chi": rationals(&chi) });
    if let Some(t) = b {
        let point = parameter(cfg, t)?;
        result["contains_point"] = json!(ideal.v_b_member(&point));
        result["avoiding_polynomial"] = match ideal.b_poly_avoiding(cfg, &point) {
            Some(p) => json!(p.to_string()),
            None => Value::Null,
        };
        input["b"] = rationals(&point);
    }
    Ok(Outcome::ok(input, result))
}

/// A rational point with prime denominators, off every integral component.
fn generic_point(d: usize) -> Vec<Rational> {
    [1009i64, 1013, 1019, 1021, 1031, 1033, 1039, 1049]
        .iter()
        .cycle()
        .take(d)
        .enumerate()
        .map(|(i, &p)| Rational::new((i as i64 + 1).into(), p.into()))
        .collect()
}

pub fn contig(m: &Loaded, chi: &str, b: Option<&str>) -> CmdResult {
    let cfg = &m.cfg;
    let chi = parameter(cfg, chi)?;
    let (point, echo) = match b {
        Some(t) => {
            let beta = parameter(cfg, t)?;
            let shifted: Vec<Rational> = beta.iter().zip(&chi).map(|(a, c)| a + c).collect();
            (shifted, Some(beta))
        }
        None => (generic_point(cfg.d()), None),
    };
    let ideal = b_ideal(cfg, &chi)?;
    let p = ideal.b_poly_avoiding(cfg, &point).ok_or(Error::NotInBIdeal)?;
    let (u, v) = shift_exponents(cfg, &chi)?;
    let op = contiguity_operator(cfg, &chi, &p, &u, &v)?;
    let mut input = json!({ "A": m.rows, "chi": rationals(&chi) });
    if let Some(beta) = echo {
        input["b"] = rationals(&beta);
    }
    let mut result = operator(cfg, &op);
    result["avoided_point"] = rationals(&point);
    Ok(Outcome::ok(input, result))
}

pub fn laurent(m: &Loaded, b: &str) -> CmdResult {
    let cfg = &m.cfg;
    let beta = parameter(cfg, b)?;
    let l = laurent_solution_faces(cfg, &beta)?;
    let result = json!({
        "faces": l.faces.iter().map(face).collect::<Vec<_>>(),
        "count": l.count,
        "count_status": "asserted",
    });
    let mut out = Outcome::ok(json!({ "A": m.rows, "b": rationals(&beta) }), result);
    out.diagnostics
        .push("the count applies the stated face criterion and is not independently verified".into());
    Ok(out)
}

pub fn volume(m: &Loaded) -> CmdResult {
    let cfg = &m.cfg;
    let vol = normalized_volume(cfg)?;
    let tri = |pull| {
        pulling_triangulation(cfg, pull)
            .iter()
            .map(|s| columns(s))
            .collect::<Vec<_>>()
    };
    let result = json!({
        "normalized_volume": integer(&vol),
        "triangulations": {
            "pull_first": tri(Pull::First),
            "pull_last": tri(Pull::Last),
        },
    });
    Ok(Outcome::ok(json!({ "A": m.rows }), result))
}

pub fn check(m: Option<&Loaded>, seed: u64, order: u32) -> CmdResult {
    let generated;
    let (cfg, rows) = match m {
        Some(l) => (&l.cfg, l.rows.clone()),
        None => {
            let d = 2 + (seed % 2) as usize;
            // at most five columns, and at most four distinct ones when d = 2
            let max_n = if d == 2 { 4 } else { 5 };
            let n = d + 1 + ((seed / 2) % (max_n - d) as u64) as usize;
            generated = random_configuration(seed, d, n, 3)?;
            let rows: Vec<Vec<i64>> = (0..d)
                .map(|i| (0..n).map(|j| generated.column(j)[i]).collect())
                .collect();
            (&generated, rows)
        }
    };
    let outcomes = run_checks(cfg, seed, order);
    let all = outcomes.iter().all(|o| o.passed);
    let result = json!({
        "passed": all,
        "properties": outcomes.iter().map(|o| json!({
            "name": o.name,
            "passed": o.passed,
            "detail": o.detail,
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        input: json!({ "A": rows, "seed": small(seed as i64), "order": order }),
        result,
        diagnostics: vec![format!("witness series truncated at order {order}")],
        status: if all { 0 } else { 1 },
    })
}
