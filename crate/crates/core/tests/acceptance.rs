//! One line per acceptance criterion. Known, analysed disagreements with printed
//! values are reported as XFAIL; everything else in the criterion must still pass.
//! An XFAIL sub-check that starts passing (XPASS) counts as a failure.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};
use taut_circles::cartan::*;
use taut_circles::e2moduli::*;
use taut_circles::gv::*;
use taut_circles::lie::{preferred_lift, Psl2Element, Sl2TildeElement};
use taut_circles::rational::{ratio, Rational};
use taut_circles::seifert::{det_c, euler_number, fibre_index, h1 as seifert_h1, SeifertData};
use taut_circles::su2::{build_group, out0, SubgroupSpec};
use taut_circles::tables::render_paper_tables;
use taut_circles::weil::{gauss_bonnet_lift_check, octagon_group, weil_fibre_action, LiftAssignment};

enum Outcome {
    Pass(String),
    Fail(String),
    /// Main checks pass; the named sub-check fails as analysed.
    XFail(String),
    /// The expected failure did not happen.
    XPass(String),
}

struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(self, summary: String, xfail: Option<(bool, String)>) -> Outcome {
        if !self.failures.is_empty() {
            return Outcome::Fail(self.failures.join("; "));
        }
        match xfail {
            Some((true, what)) => Outcome::XFail(format!("{summary}; expected failure: {what}")),
            Some((false, what)) => Outcome::XPass(format!("{summary}; expected failure passed: {what}")),
            None => Outcome::Pass(summary),
        }
    }
}

fn run<F: FnOnce() -> Outcome>(ok: &mut bool, id: u32, name: &str, budget: Duration, f: F) {
    let t = Instant::now();
    let out = f();
    let el = t.elapsed();
    let over = el > budget;
    let (tag, msg) = match out {
        _ if over => ("FAIL", format!("runtime {el:.2?} exceeds {budget:?}")),
        Outcome::Pass(m) => ("PASS", m),
        Outcome::Fail(m) => ("FAIL", m),
        Outcome::XFail(m) => ("XFAIL", m),
        Outcome::XPass(m) => ("XPASS", m),
    };
    if tag == "FAIL" || tag == "XPASS" {
        *ok = false;
    }
    println!("{tag:5} {id}. {name} [{el:.2?}] {msg}");
}

fn finite_groups() -> Outcome {
    let mut c = Checks::new();
    let expect: [(SubgroupSpec, usize, Option<usize>, usize); 6] = [
        (SubgroupSpec::q8(), 8, Some(6), 6),
        (SubgroupSpec::Dstar(12), 12, None, 2),
        (SubgroupSpec::Dstar(16), 16, None, 1),
        (SubgroupSpec::Tstar, 24, None, 2),
        (SubgroupSpec::Ostar, 48, None, 1),
        (SubgroupSpec::Istar, 120, Some(2), 1),
    ];
    let mut dstar16 = String::new();
    let mut dstar16_fails = false;
    let mut seen = Vec::new();
    for (spec, order, out, o0) in expect {
        let grp = match build_group(spec) {
            Ok(g) => g,
            Err(e) => return Outcome::Fail(format!("{spec}: {e}")),
        };
        c.check(grp.elements.len() == order, format!("{spec}: closure order {}", grp.elements.len()));
        let r = match out0(spec) {
            Ok(r) => r,
            Err(e) => return Outcome::Fail(format!("{spec}: {e}")),
        };
        if let Some(o) = out {
            c.check(r.out == o, format!("{spec}: |Out| = {}", r.out));
        }
        if spec == SubgroupSpec::Dstar(16) {
            dstar16_fails = r.out0 != o0;
            dstar16 = format!("Dstar16 |Out0| = {} ({}), printed 1", r.out0, r.out0_tag);
        } else {
            c.check(r.out0 == o0, format!("{spec}: |Out0| = {}", r.out0));
        }
        seen.push(format!("{spec}({},{})", r.out, r.out0));
    }
    c.finish(seen.join(" "), Some((dstar16_fails, dstar16)))
}

fn torus_bundles() -> Outcome {
    let mut c = Checks::new();
    let printed = ["Z^3", "Z+Z2+Z2", "Z+Z3", "Z+Z2", "Z"];
    for (k, h) in PERIODS.iter().zip(printed) {
        match (h1(*k), table1(*k)) {
            (Ok(g), Ok(row)) => c.check(g.to_string() == h && row.h1 == h, format!("k = {k}: H1 {g}")),
            (Err(e), _) | (_, Err(e)) => c.check(false, format!("k = {k}: {e}")),
        }
    }
    let dets: Vec<i64> = [2, 3, 4, 6].iter().map(|&k| rotational_rigidity(&monodromy(k).unwrap()).determinant).collect();
    c.check(dets == [4, 3, 2, 1], format!("rigidity determinants {dets:?}"));
    let rendered = [
        "N x SL2Z\\(H2 x T2)",
        "{r in N : r = 1 mod 2} x PSL2Z\\H2",
        "{r in N : r = ±1 mod 3}",
        "{r in N : r = ±1 mod 4}",
        "{r in N : r = ±1 mod 6}",
    ];
    for (k, want) in PERIODS.iter().zip(rendered) {
        let d = moduli_descriptor(*k).unwrap();
        c.check(d.rendered == want, format!("k = {k}: {}", d.rendered));
        c.check(d.continuous.is_some() == (*k <= 2), format!("k = {k}: continuous part"));
        let kk = i64::from(*k);
        for r in -5..40 {
            let member = match k {
                1 => r >= 1,
                2 => r >= 1 && r % 2 == 1,
                _ => r >= 1 && (r % kk == 1 || r % kk == kk - 1),
            };
            c.check(d.discrete.contains(r) == member, format!("k = {k}: membership of {r}"));
        }
    }
    c.finish("H1, rigidity (4,3,2,1) and moduli table reproduced".into(), None)
}

fn seifert_suite() -> Outcome {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(0..=6);
        let cones: Vec<(i64, i64)> = (0..n)
            .map(|_| loop {
                let a = rng.gen_range(2..=30i64);
                let b = rng.gen_range(1..a);
                if num_integer::Integer::gcd(&a, &b) == 1 {
                    break (a, b);
                }
            })
            .collect();
        let s = SeifertData::new(rng.gen_range(0..3), rng.gen_range(-6..6), cones).unwrap();
        let e = euler_number(&s);
        if e == ratio(0, 1) {
            continue;
        }
        let d = det_c(&s);
        let prod = Rational::from_integer(s.alpha_product()) * &e;
        c.check(Rational::from_integer(d.clone()) == prod, format!("{s:?}: det C = {d}"));
        let h = seifert_h1(&s);
        c.check(BigInt::from(h.torsion_order()) == d.magnitude().clone().into(), format!("{s:?}: torsion {}", h.torsion_order()));
        c.check(h.rank == 2 * s.g as usize, format!("{s:?}: rank {}", h.rank));
        done += 1;
    }
    let ex = SeifertData::new(0, -2, vec![(2, 1), (3, 2), (7, 6)]).unwrap();
    c.check(seifert_h1(&ex).is_trivial(), "worked example H1");
    c.check(fibre_index(&ex).ok() == Some(ratio(1, 1)), "worked example r");
    c.finish("50 random tuples; worked example H1 = 0, r = 1".into(), None)
}

fn cartan_suite() -> Outcome {
    let mut c = Checks::new();
    let e2 = sample_points(Chart::E2, 100, 1).unwrap();
    let sl = sample_points(Chart::Sl2, 100, 2).unwrap();
    let re = check_cartan_k(&e2_coframe, 0.0, &e2, DiffOptions::default()).unwrap().overall.max_residual;
    let rs = check_cartan_k(&sl2_coframe, -1.0, &sl, DiffOptions::default()).unwrap().overall.max_residual;
    c.check(re < 1e-7, format!("E2 residual {re:e}"));
    c.check(rs < 1e-6, format!("SL2 residual {rs:e}"));
    let mut ratios = Vec::new();
    for (pts, k, f) in [(&e2, 0.0, &e2_coframe as &(dyn Fn(&ChartPoint) -> taut_circles::Result<[Covector; 3]> + Sync)), (&sl, -1.0, &sl2_coframe)] {
        let at = |h: f64| check_cartan_k(f, k, &pts[..20], DiffOptions { h, richardson: false }).unwrap().overall.max_residual;
        let (a, b, d) = (at(0.1), at(0.05), at(0.025));
        for r in [a / b, b / d] {
            c.check((3.5..=4.5).contains(&r), format!("step ratio {r:.3}"));
            ratios.push(format!("{r:.2}"));
        }
    }
    let s3 = sample_points(Chart::S3North, 100, 3).unwrap();
    let mut rt: f64 = 0.0;
    for a in [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.25)] {
        let fam = TautFamily::A(a);
        let r = check_taut(&|p: &ChartPoint| family_pair(&fam, p), &s3).unwrap();
        c.check(r.max_residual < 1e-9 && r.min_volume > 0.0, format!("a = {a}: {r:?}"));
        rt = rt.max(r.max_residual);
    }
    c.finish(format!("E2 {re:.1e}, SL2 {rs:.1e}, step ratios [{}], taut {rt:.1e}", ratios.join(", ")), None)
}

fn random_element(rng: &mut ChaCha8Rng) -> Sl2TildeElement {
    let l = rng.gen_range(0.3..3.0f64).exp();
    let k1 = Psl2Element::rotation(rng.gen_range(-PI..PI));
    let k2 = Psl2Element::rotation(rng.gen_range(-PI..PI));
    let m = k1.mul(&Psl2Element::diag(l)).mul(&k2);
    let base = preferred_lift(&m, None).unwrap_or(Sl2TildeElement::IDENTITY);
    Sl2TildeElement::central(f64::from(rng.gen_range(-60..=60))).mul(&base).unwrap()
}

fn lift_suite() -> Outcome {
    let mut c = Checks::new();
    let mut worst: f64 = 0.0;
    for alpha in [2u32, 3, 5, 7] {
        let a = Psl2Element::rotation(PI / f64::from(alpha));
        let conj = Psl2Element::diag(1.7).mul(&Psl2Element::new(1.0, 0.4, 0.0, 1.0).unwrap());
        for m in [a, conj.mul(&a).mul(&conj.inv())] {
            let g = preferred_lift(&m, Some(alpha)).unwrap();
            let p = g.pow(i64::from(alpha)).unwrap();
            let (dm, dd) = p.distance(&Sl2TildeElement::central(1.0));
            worst = worst.max(dm).max(dd);
            c.check(dm < 1e-9 && dd < 1e-9, format!("alpha = {alpha}: ({dm:e}, {dd:e})"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut res: f64 = 0.0;
    for _ in 0..50 {
        let (g, h, k) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        let l = g.mul(&h).unwrap().mul(&k).unwrap();
        let r = g.mul(&h.mul(&k).unwrap()).unwrap();
        let (dm, dd) = l.distance(&r);
        res = res.max(dm).max(dd);
        let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..3.0));
        let th = rng.gen_range(-10.0..10.0);
        let (w1, t1) = g.mul(&h).unwrap().act(z, th).unwrap();
        let (hz, ht) = h.act(z, th).unwrap();
        let (w2, t2) = g.act(hz, ht).unwrap();
        res = res.max((w1 - w2).norm()).max((t1 - t2).abs());
    }
    c.check(res < 1e-9, format!("associativity/action residual {res:e}"));
    c.finish(format!("A^alpha residual {worst:.1e}; group law residual {res:.1e}"), None)
}

fn gauss_bonnet() -> Outcome {
    let mut c = Checks::new();
    let grp = octagon_group().unwrap();
    let base = gauss_bonnet_lift_check(&grp).unwrap();
    c.check(base.passes(1e-9, 1e-6), format!("{base:?}"));
    c.check((base.shift - 2.0 * TAU).abs() < 1e-6, format!("shift {}", base.shift));
    let pref = LiftAssignment::preferred(&grp, 0).unwrap();
    let moved = weil_fibre_action(&[3, -1, 7, 2], &pref).unwrap().commutator_product().unwrap();
    let (dm, dd) = moved.distance(&pref.commutator_product().unwrap());
    c.check(dm < 1e-9 && dd < 1e-6, format!("lift change ({dm:e}, {dd:e})"));
    let k = Psl2Element::from_gl(1.3, 0.4, -0.2, 0.9).unwrap();
    let conj = gauss_bonnet_lift_check(&grp.conjugate_by(&k).unwrap()).unwrap();
    c.check(conj.passes(1e-9, 1e-6) && (conj.shift - base.shift).abs() < 1e-6, format!("conjugated {conj:?}"));
    c.finish(
        format!(
            "shift/2pi = {:.9}, matrix {:.1e}, displacement {:.1e}",
            base.shift_over_2pi, base.matrix_residual, base.displacement_residual
        ),
        None,
    )
}

fn godbillon_vey() -> Outcome {
    let mut c = Checks::new();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    pool.install(|| {
        let mut parts = Vec::new();
        for a in [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.25)] {
            let fam = TautFamily::A(a);
            let e64 = gv_integral(&fam, 64, &GvOptions::default()).unwrap();
            let e32 = gv_integral(&fam, 32, &GvOptions::default()).unwrap();
            let gain = e32.rel_err / e64.rel_err;
            c.check(e64.rel_err < 0.02, format!("a = {a}: rel_err {:e}", e64.rel_err));
            c.check(gain >= 3.0, format!("a = {a}: error reduction {gain:.2}"));
            c.check(e64.volume_rel_err < 1e-3, format!("|S3| rel err {:e}", e64.volume_rel_err));
            parts.push(format!("a={}{:+}i rel {:.1e} gain {gain:.1}", a.re, a.im, e64.rel_err));
        }
        let mut n_fail = Vec::new();
        for n in [1, 2] {
            let e = gv_integral(&TautFamily::N(n), 64, &GvOptions::default()).unwrap();
            if e.rel_err >= 0.02 {
                n_fail.push(format!("n={n}: {:.3} vs printed {:.3} (rel {:.2})", e.value.re, e.closed_form.re, e.rel_err));
            }
        }
        let vol = S3Atlas::new(64).unwrap().volume();
        parts.push(format!("|S3| rel {:.1e}", (vol / S3_VOLUME - 1.0).abs()));
        let all_fail = n_fail.len() == 2;
        c.finish(parts.join(", "), Some((all_fail, if all_fail { n_fail.join("; ") } else { "n-family closed form".into() })))
    })
}

fn canonicality() -> Outcome {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut trials = 0;
    while trials < 100 {
        let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..2.0));
        let z = Complex64::new(rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
        let r = rng.gen_range(1..5);
        let Ok(sf) = StandardFormRep::new(r, tau, z) else { continue };
        let base = canonical_form(&sf.as_rep()).unwrap();
        let scale = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-3.0..3.0));
        let mut rep = change_basis(&sf.as_rep(), &random_unimodular(&mut rng));
        rep.v = rep.v.map(|v| v * scale);
        match canonical_form(&rep) {
            Ok(m) => c.check(
                m.r == base.r && (m.tau - base.tau).norm() < 1e-7 && (m.z - base.z).norm() < 1e-7,
                format!("{base:?} vs {m:?}"),
            ),
            Err(e) => c.check(false, e.to_string()),
        }
        trials += 1;
    }
    c.finish("100 perturbations agree".into(), None)
}

fn golden() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/tests/golden/paper_tables.json");
    let want = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return Outcome::Fail(format!("{path}: {e}")),
    };
    match render_paper_tables() {
        Ok(got) if got == want => Outcome::Pass(format!("{} bytes identical", got.len())),
        Ok(got) => Outcome::Fail(format!("rendering differs ({} vs {} bytes)", got.len(), want.len())),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn main() {
    let mut ok = true;
    let s = Duration::from_secs;
    run(&mut ok, 1, "finite-group suite", s(60), finite_groups);
    run(&mut ok, 2, "torus-bundle suite", s(1), torus_bundles);
    run(&mut ok, 3, "Seifert suite", s(5), seifert_suite);
    run(&mut ok, 4, "Cartan suite", s(10), cartan_suite);
    run(&mut ok, 5, "lift suite", s(5), lift_suite);
    run(&mut ok, 6, "Gauss-Bonnet lift", s(10), gauss_bonnet);
    run(&mut ok, 7, "Godbillon-Vey", s(600), godbillon_vey);
    run(&mut ok, 8, "standard-form canonicality", s(1), canonicality);
    run(&mut ok, 9, "golden tables", s(5), golden);
    if !ok {
        std::process::exit(1);
    }
}
