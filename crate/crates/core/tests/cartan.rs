use num_complex::Complex64;
use proptest::prelude::*;
use taut_circles::cartan::s3::taut_residual_at;
use taut_circles::cartan::{
    cartan_residual_at, det3, e2_coframe, family_pair, sl2_coframe, Chart, ChartPoint, Covector, DiffOptions,
    TautFamily,
};
use taut_circles::lie::{EuclideanMotion, Psl2Element, Sl2TildeElement};

type Coframe = fn(&ChartPoint) -> taut_circles::Result<[Covector; 3]>;

/// Checks `(L_g)^* σ = σ` at `p`, with the Jacobian of `L_g` from central differences.
fn pullback_defect(coframe: Coframe, map: impl Fn([f64; 3]) -> [f64; 3], p: &ChartPoint) -> f64 {
    let h = 1e-6;
    let mut jac = [[0.0; 3]; 3]; // jac[i][j] = ∂_j (L_g)_i
    for j in 0..3 {
        let (mut a, mut b) = (p.coords, p.coords);
        a[j] += h;
        b[j] -= h;
        let (fa, fb) = (map(a), map(b));
        for i in 0..3 {
            jac[i][j] = (fa[i] - fb[i]) / (2.0 * h);
        }
    }
    let here = coframe(p).unwrap();
    let there = coframe(&p.with_coords(map(p.coords)).unwrap()).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..3 {
        for j in 0..3 {
            let pulled: f64 = (0..3).map(|i| there[k][i] * jac[i][j]).sum();
            worst = worst.max((pulled - here[k][j]).abs());
        }
    }
    worst
}

fn sl2_element() -> impl Strategy<Value = Sl2TildeElement> {
    (-1.5..1.5f64, -1.5..1.5f64, 0.5..2.0f64, -3i32..=3).prop_map(|(b, c, a, k)| {
        // a d − b c = 1 with a bounded away from 0
        let m = Psl2Element::new(a, b, c, (1.0 + b * c) / a).unwrap();
        let principal = -2.0 * Complex64::new(m.d, m.c).arg();
        Sl2TildeElement::new(m, principal + std::f64::consts::TAU * k as f64).unwrap()
    })
}

fn s3_point() -> impl Strategy<Value = [f64; 4]> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("zero", |(a, b, c, d)| a * a + b * b + c * c + d * d > 0.01)
        .prop_map(|(a, b, c, d)| {
            let n = (a * a + b * b + c * c + d * d).sqrt();
            [a / n, b / n, c / n, d / n]
        })
}

fn family() -> impl Strategy<Value = TautFamily> {
    prop_oneof![
        (0.05..0.95f64, -2.0..2.0f64).prop_map(|(re, im)| TautFamily::A(Complex64::new(re, im))),
        (1u32..=4).prop_map(TautFamily::N),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn e2_coframe_is_left_invariant(
        g in (-5.0..5.0f64, -5.0..5.0f64, -7.0..7.0f64),
        p in (-5.0..5.0f64, -5.0..5.0f64, -7.0..7.0f64),
    ) {
        let g = EuclideanMotion::new(g.0, g.1, g.2);
        let p = ChartPoint::e2(p.0, p.1, p.2);
        prop_assert!(pullback_defect(e2_coframe, |c| g.act(c), &p) < 1e-8);
    }

    #[test]
    fn sl2_coframe_is_left_invariant(g in sl2_element(), p in (-2.0..2.0f64, 0.2..3.0f64, -7.0..7.0f64)) {
        let p = ChartPoint::sl2(p.0, p.1, p.2).unwrap();
        let map = |c: [f64; 3]| {
            let (w, t) = g.act(Complex64::new(c[0], c[1]), c[2]).unwrap();
            [w.re, w.im, t]
        };
        let d = pullback_defect(sl2_coframe, map, &p);
        prop_assert!(d < 1e-6, "{}", d);
    }

    #[test]
    fn coframes_are_independent_on_boxes(p in (-10.0..10.0f64, 0.1..10.0f64, -10.0..10.0f64)) {
        prop_assert!(det3(&e2_coframe(&ChartPoint::e2(p.0, p.1, p.2)).unwrap()).abs() > 1e-6);
        prop_assert!(det3(&sl2_coframe(&ChartPoint::sl2(p.0, p.1, p.2).unwrap()).unwrap()).abs() > 1e-6);
    }

    /// Halving the step divides the truncation error by four.
    #[test]
    fn residuals_converge_at_second_order(p in (-1.0..1.0f64, 0.5..2.0f64, -3.0..3.0f64)) {
        let p = ChartPoint::sl2(p.0, p.1, p.2).unwrap();
        let at = |h: f64| {
            let r = cartan_residual_at(&sl2_coframe, -1.0, &p, DiffOptions { h, richardson: false }).unwrap();
            r.iter().copied().fold(0.0, f64::max)
        };
        let (r1, r2) = (at(0.04), at(0.02));
        prop_assume!(r2 > 1e-9);
        prop_assert!((3.5..=4.5).contains(&(r1 / r2)), "{} / {} = {}", r1, r2, r1 / r2);
    }

    /// The taut equations are SO(2)-equivariant, so rotating the pair leaves the residuals alone.
    #[test]
    fn taut_residuals_are_rotation_invariant(fam in family(), x in s3_point(), phi in 0.0..std::f64::consts::TAU) {
        let p = ChartPoint::s3(x).unwrap();
        let pair = family_pair(&fam, &p).unwrap();
        let (a, b, _, v) = taut_residual_at(&pair);
        let (a2, b2, _, v2) = taut_residual_at(&pair.rotated(phi));
        prop_assert!((a - a2).abs() < 1e-10 && (b - b2).abs() < 1e-10, "{} {} {} {}", a, a2, b, b2);
        prop_assert!((v.abs() - v2.abs()).abs() < 1e-10 * (1.0 + v.abs()));
        prop_assert!(v > 1e-6);
    }

    #[test]
    fn volume_is_nonzero_in_both_charts(fam in family(), x in s3_point()) {
        prop_assume!(x[3].abs() < 0.9);
        let n = family_pair(&fam, &ChartPoint::s3_in(Chart::S3North, x).unwrap()).unwrap();
        let s = family_pair(&fam, &ChartPoint::s3_in(Chart::S3South, x).unwrap()).unwrap();
        let (_, _, _, vn) = taut_residual_at(&n);
        let (_, _, _, vs) = taut_residual_at(&s);
        prop_assert!(vn > 1e-8 && vs > 1e-8);
    }
}
