use crate::report::{to_value, Outcome};
use num_complex::Complex64;
use serde_json::{json, Value};
use taut_circles::cartan::{
    check_cartan_k, check_taut, e2_coframe, family_pair, flat_coframe, sample_points, sl2_coframe, Chart, ChartPoint,
    DiffOptions, TautFamily,
};
use taut_circles::e2moduli::{
    canonical_form, conjugation_relations, h1, moduli_descriptor, monodromy, pi1_presentation, rotational_rigidity,
    symmetry_points, table1, teichmuller_descriptor, to_standard_form, universal_lattice, Z3Rep, PERIODS,
};
use taut_circles::gv::{gv_closed_form, gv_estimate, gv_n_family_via_a, moduli_value_from_gv, GvOptions};
use taut_circles::rational::fmt as rat;
use taut_circles::seifert::{self, SeifertData};
use taut_circles::su2::{self, groups::label, SubgroupSpec};
use taut_circles::weil::{gauss_bonnet_lift_check, lift_uniqueness, octagon_group, rho0_relation_check};
use taut_circles::{Error, Result};

/// `0.5`, `0.5+0.25i`, `0.5-i`, `0.5,0.25` or `[0.5,0.25]`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("not a complex number: {s:?}"));
    let t: String = s.trim().trim_start_matches('[').trim_end_matches(']').chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((a, b)) = t.split_once(',') {
        return Ok(Complex64::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
    }
    if let Some(body) = t.strip_suffix('i') {
        let cut = body.char_indices().skip(1).filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with('e')).last();
        let (re, im) = match cut {
            Some((i, _)) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        return Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?));
    }
    Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
}

/// Reads `arg` as a file when such a file exists, otherwise uses it literally.
fn literal_or_file(arg: &str) -> Result<String> {
    let p = std::path::Path::new(arg);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn family(name: &str, param: &str) -> Result<TautFamily> {
    let fam = match name {
        "a" => TautFamily::A(parse_complex(param)?),
        "n" => TautFamily::N(param.parse().map_err(|_| Error::Parse(format!("n must be a positive integer, got {param:?}")))?),
        other => return Err(Error::InvalidInput(format!("unknown family {other:?}; expected a or n"))),
    };
    fam.validate()?;
    Ok(fam)
}

fn seifert_summary(s: &SeifertData) -> Result<Value> {
    let adm = seifert::admits_sl2(s);
    let r = seifert::fibre_index(s).ok().map(|r| rat(&r));
    let cert = seifert::raymond_vasquez(s);
    let teich = seifert::teichmuller_descriptor(s).ok();
    Ok(json!({
        "tuple": s.to_string(),
        "chi_orb": rat(&seifert::chi_orb(s)),
        "euler_number": rat(&seifert::euler_number(s)),
        "fibre_index": r,
        "admissible": adm,
        "rv_certificate": cert,
        "det_c": seifert::det_c(s).to_string(),
        "h1": seifert::h1(s).to_string(),
        "teichmuller": teich,
    }))
}

pub fn seifert_analyze(tuple: &str) -> Result<Outcome> {
    let s = seifert::parse_seifert(&literal_or_file(tuple)?)?;
    let mut out = seifert_summary(&s)?;
    out["lift_uniqueness"] = to_value(lift_uniqueness(&s));
    out["pi1"] = presentation_json(&seifert::pi1_presentation(&s));
    let det = seifert::det_c(&s);
    let h = seifert::h1(&s);
    let consistent = det == num_bigint::BigInt::from(0) || num_bigint::BigInt::from(h.torsion_order()) == det.magnitude().clone().into();
    Ok(Outcome::new(json!({ "tuple": tuple }), out).require(consistent))
}

fn presentation_json(p: &seifert::Presentation) -> Value {
    json!({
        "generators": p.generators,
        "relators": p.relators.iter().map(|w| p.render_word(w)).collect::<Vec<_>>(),
    })
}

/// Worked examples covering the closed, cone-point and non-geometric cases.
const SEIFERT_EXAMPLES: [&str; 6] = [
    "g=0 b=-2 (2,1) (3,2) (7,6)",
    "g=2 b=1",
    "g=2 b=2",
    "g=2 b=3",
    "g=1 b=0 (2,1)",
    "g=0 b=1 (2,1) (3,1)",
];

pub fn seifert_tables() -> Result<Outcome> {
    let rows = SEIFERT_EXAMPLES
        .iter()
        .map(|t| seifert_summary(&seifert::parse_text(t)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::new(json!({}), json!({ "rows": rows })))
}

fn parse_k(k: &str) -> Result<u32> {
    k.parse().map_err(|_| Error::Parse(format!("period must be an integer, got {k:?}")))
}

pub fn torusbundle(what: &str, k: Option<&str>) -> Result<Outcome> {
    let ks: Vec<u32> = match k {
        Some(k) => vec![parse_k(k)?],
        None if what == "table" => PERIODS.to_vec(),
        None => return Err(Error::InvalidInput(format!("torusbundle {what} needs a period k"))),
    };
    let rows = ks
        .iter()
        .map(|&k| {
            Ok(match what {
                "table" => to_value(table1(k)?),
                "h1" => json!({
                    "k": k,
                    "A": monodromy(k)?,
                    "relations": conjugation_relations(k)?,
                    "pi1": presentation_json(&pi1_presentation(k)?),
                    "h1": h1(k)?.to_string(),
                }),
                "moduli" => json!({
                    "k": k,
                    "rigidity": rotational_rigidity(&monodromy(k)?),
                    "moduli": moduli_descriptor(k)?,
                    "teichmuller": teichmuller_descriptor(k)?,
                }),
                other => return Err(Error::InvalidInput(format!("unknown torusbundle query {other:?}"))),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let outputs = if rows.len() == 1 && k.is_some() { rows.into_iter().next().unwrap() } else { json!({ "rows": rows }) };
    Ok(Outcome::new(json!({ "query": what, "k": k }), outputs))
}

pub fn t3_standardize(arg: &str) -> Result<Outcome> {
    let text = literal_or_file(arg)?;
    let rep: Z3Rep = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("Z3 representation: {e}")))?;
    let sf = to_standard_form(&rep)?;
    let canon = canonical_form(&rep)?;
    let lattice = universal_lattice(&canon)?;
    let syms = symmetry_points(canon.tau, canon.z)?;
    let expect = std::f64::consts::TAU * canon.r as f64 * canon.tau.im;
    let det_res = (lattice.real_det.abs() - expect).abs() / expect;
    Ok(Outcome::new(
        to_value(rep),
        json!({ "standard": sf, "canonical": canon, "lattice_det": lattice.real_det, "symmetries": syms }),
    )
    .residual("lattice_det_rel", det_res, 1e-9))
}

fn lens_order(spec: &str) -> Result<u64> {
    let t = spec.trim().to_ascii_lowercase();
    let body = t.strip_prefix('l').or_else(|| t.strip_prefix('c')).unwrap_or(&t);
    body.parse().map_err(|_| Error::Parse(format!("lens order expected, got {spec:?}")))
}

pub fn su2(what: &str, spec: &str) -> Result<Outcome> {
    let inputs = json!({ "query": what, "spec": spec });
    match what {
        "group" => {
            let s: SubgroupSpec = spec.parse()?;
            let g = su2::build_group(s)?;
            let elements: Vec<String> = g.elements.iter().map(|q| label(&g.field, q)).collect();
            let gens: Vec<Value> = g
                .generator_names
                .iter()
                .zip(&g.table.generator_indices)
                .map(|(n, &i)| json!([n, elements[i]]))
                .collect();
            let mut orders = std::collections::BTreeMap::new();
            for o in g.table.element_orders() {
                *orders.entry(o.to_string()).or_insert(0usize) += 1;
            }
            Ok(Outcome::new(
                inputs,
                json!({
                    "group": s.to_string(),
                    "order": g.table.order,
                    "family": s.table_family(),
                    "abelian": g.table.is_abelian(),
                    "center": g.table.center().len(),
                    "generators": gens,
                    "element_orders": orders,
                    "elements": elements,
                }),
            )
            .require(g.table.order == s.expected_order() && g.table.verify_axioms()))
        }
        "out0" => {
            let s: SubgroupSpec = spec.parse()?;
            let r = su2::out0(s)?;
            let worst = r.witnesses.iter().filter_map(|w| w.residual).fold(0.0, f64::max);
            let gap = r.classes.iter().filter(|c| !c.realizable).map(|c| c.smallest_singular_value).fold(f64::INFINITY, f64::min);
            let count = su2::teichmuller_count(s)?;
            let mut out = to_value(&r);
            out["teichmuller_count"] = Value::from(count);
            let o = Outcome::new(inputs, out).residual("intertwiner", worst, 1e-9).require(r.out0_is_subgroup);
            Ok(if gap.is_finite() { o.info("nonrealizable_min_sigma", gap).require(gap > 1e-6) } else { o })
        }
        "lens" => {
            let m = lens_order(spec)?;
            let members: Vec<u64> = (1..).filter(|&n| su2::m2_member(m, n)).take(8).collect();
            Ok(Outcome::new(
                inputs,
                json!({
                    "moduli": su2::lens_moduli(m)?,
                    "teichmuller": su2::lens_teichmuller(m)?,
                    "m2_first": members,
                }),
            ))
        }
        other => Err(Error::InvalidInput(format!("unknown su2 query {other:?}"))),
    }
}

pub fn gv_compute(fam_name: &str, param: &str, res: usize, tol: Option<f64>) -> Result<Outcome> {
    let fam = family(fam_name, param)?;
    let e = gv_estimate(&fam, res, None, &GvOptions::default())?;
    let tol = tol.unwrap_or(0.02);
    let mut out = json!({
        "value_re": e.value.re,
        "value_im": e.value.im,
        "closed_form_re": e.closed_form.re,
        "closed_form_im": e.closed_form.im,
        "rel_err": e.rel_err,
        "resolution": e.resolution,
        "volume": e.volume,
        "error_estimate": e.error_estimate,
    });
    if let TautFamily::N(n) = fam {
        let v = gv_n_family_via_a(n)?;
        out["a_family_value"] = json!([v.re, v.im]);
        out["rel_err_vs_a_family"] = Value::from((e.value - v).norm() / v.norm());
    }
    Ok(Outcome::new(json!({ "family": fam }), out)
        .residual("rel_err", e.rel_err, tol)
        .info("volume_rel_err", e.volume_rel_err))
}

pub fn gv_closed(fam_name: &str, param: &str) -> Result<Outcome> {
    let fam = family(fam_name, param)?;
    let v = gv_closed_form(&fam)?;
    let mut out = json!({ "closed_form": [v.re, v.im], "moduli_value": moduli_value_from_gv(v) });
    if let TautFamily::N(n) = fam {
        let a = gv_n_family_via_a(n)?;
        out["a_family_value"] = json!([a.re, a.im]);
    }
    Ok(Outcome::new(json!({ "family": fam }), out))
}

pub fn sl2(what: &str, tuple: Option<&str>, tol: Option<f64>) -> Result<Outcome> {
    let grp = octagon_group()?;
    match what {
        "gauss-bonnet" => {
            let chk = match tuple {
                None => gauss_bonnet_lift_check(&grp)?,
                Some(t) => rho0_relation_check(&grp, &seifert::parse_seifert(&literal_or_file(t)?)?)?,
            };
            let tol = tol.unwrap_or(1e-6);
            Ok(Outcome::new(json!({ "tuple": tuple }), &chk)
                .residual("matrix", chk.matrix_residual, 1e-9)
                .residual("displacement", chk.displacement_residual, tol)
                .residual("action", chk.action_residual, tol))
        }
        "lift-uniqueness" => {
            let t = tuple.ok_or_else(|| Error::InvalidInput("lift-uniqueness needs a Seifert tuple".into()))?;
            let s = seifert::parse_seifert(&literal_or_file(t)?)?;
            Ok(Outcome::new(json!({ "tuple": t }), lift_uniqueness(&s)))
        }
        other => Err(Error::InvalidInput(format!("unknown sl2 query {other:?}"))),
    }
}

pub fn cartan_check(geometry: &str, param: Option<&str>, seed: u64, samples: usize, tol: Option<f64>) -> Result<Outcome> {
    let inputs = json!({ "geometry": geometry, "param": param, "seed": seed, "samples": samples });
    let opts = DiffOptions::default();
    let (res, default_tol, detail) = match geometry {
        "e2" | "sl2" | "flat" => {
            let (chart, k) = if geometry == "e2" { (Chart::E2, 0.0) } else { (Chart::Sl2, -1.0) };
            let pts = sample_points(chart, samples, seed)?;
            let r = match geometry {
                "e2" => check_cartan_k(&e2_coframe, k, &pts, opts)?,
                "sl2" => check_cartan_k(&sl2_coframe, k, &pts, opts)?,
                _ => check_cartan_k(&flat_coframe, k, &pts, opts)?,
            };
            (r.overall.max_residual, if geometry == "e2" { 1e-7 } else { 1e-6 }, to_value(r))
        }
        "s3-a" | "s3-n" => {
            let p = param.ok_or_else(|| Error::InvalidInput(format!("{geometry} needs a family parameter")))?;
            let fam = family(&geometry[3..], p)?;
            let pts = sample_points(Chart::S3North, samples, seed)?;
            let r = check_taut(&|q: &ChartPoint| family_pair(&fam, q), &pts)?;
            (r.max_residual, 1e-9, to_value(r))
        }
        other => return Err(Error::InvalidInput(format!("unknown geometry {other:?}; expected e2, sl2, flat, s3-a, s3-n"))),
    };
    Ok(Outcome::new(inputs, detail).residual("max_residual", res, tol.unwrap_or(default_tol)))
}
