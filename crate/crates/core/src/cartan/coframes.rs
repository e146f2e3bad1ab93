use super::forms::{numeric_d, wedge11, Chart, ChartPoint, Covector, DiffOptions, TwoForm};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `α₁ = cos θ dx + sin θ dy`, `α₂ = −sin θ dx + cos θ dy`, `α₃ = −dθ`.
pub fn e2_coframe(p: &ChartPoint) -> Result<[Covector; 3]> {
    p.expect_chart(Chart::E2)?;
    let (s, c) = p.coords[2].sin_cos();
    Ok([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, -1.0]])
}

/// Sign choices for the `H² × R` coframe `ω₁ + iω₂ = e^{−iεθ}(dx + i dy)/y`, `ω₃ = δ(dθ + dx/y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Variant {
    pub theta_sign: i8,
    pub omega3_sign: i8,
}

impl Sl2Variant {
    /// Search order: the frozen candidate first, then θ flipped, ω₃ flipped, both.
    pub const ALL: [Sl2Variant; 4] = [
        Sl2Variant { theta_sign: 1, omega3_sign: 1 },
        Sl2Variant { theta_sign: -1, omega3_sign: 1 },
        Sl2Variant { theta_sign: 1, omega3_sign: -1 },
        Sl2Variant { theta_sign: -1, omega3_sign: -1 },
    ];
}

/// The variant that satisfies the K = −1 structure equations.
pub const SL2_VARIANT: Sl2Variant = Sl2Variant { theta_sign: 1, omega3_sign: -1 };

pub fn sl2_coframe_variant(v: Sl2Variant, p: &ChartPoint) -> Result<[Covector; 3]> {
    p.expect_chart(Chart::Sl2)?;
    let [_, y, th] = p.coords;
    let (s, c) = (f64::from(v.theta_sign) * th).sin_cos();
    let d = f64::from(v.omega3_sign);
    Ok([[c / y, s / y, 0.0], [-s / y, c / y, 0.0], [d / y, 0.0, d]])
}

/// Left-invariant coframe on `H² × R` with `dω₃ = −ω₁∧ω₂`.
pub fn sl2_coframe(p: &ChartPoint) -> Result<[Covector; 3]> {
    sl2_coframe_variant(SL2_VARIANT, p)
}

/// Constant coframe `(dx, dy, dθ)`.
pub fn flat_coframe(_p: &ChartPoint) -> Result<[Covector; 3]> {
    Ok([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormResidual {
    pub max_residual: f64,
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanResidual {
    /// `|dω₁ − ω₂∧ω₃|`, `|dω₂ − ω₃∧ω₁|`, `|dω₃ − Kω₁∧ω₂|`, each a max over the samples.
    pub equations: [f64; 3],
    /// Smallest `|det(ω₁, ω₂, ω₃)|` seen.
    pub min_det: f64,
    pub overall: FormResidual,
}

/// The three structure-equation residuals at one point.
pub fn cartan_residual_at<F>(coframe: &F, k: f64, p: &ChartPoint, opts: DiffOptions) -> Result<[f64; 3]>
where
    F: Fn(&ChartPoint) -> Result<[Covector; 3]> + ?Sized,
{
    let w = coframe(p)?;
    let mut dw: [TwoForm; 3] = [[0.0; 3]; 3];
    for (i, slot) in dw.iter_mut().enumerate() {
        *slot = numeric_d(&|q: &ChartPoint| coframe(q).map(|c| c[i]), p, opts)?;
    }
    let rhs = [wedge11(&w[1], &w[2]), wedge11(&w[2], &w[0]), wedge11(&w[0], &w[1]).map(|x| k * x)];
    Ok([0, 1, 2].map(|i| (0..3).map(|c| (dw[i][c] - rhs[i][c]).abs()).fold(0.0, f64::max)))
}

pub fn check_cartan_k<F>(coframe: &F, k: f64, points: &[ChartPoint], opts: DiffOptions) -> Result<CartanResidual>
where
    F: Fn(&ChartPoint) -> Result<[Covector; 3]> + Sync + ?Sized,
{
    let per_point = points
        .par_iter()
        .map(|p| Ok((cartan_residual_at(coframe, k, p, opts)?, super::forms::det3(&coframe(p)?).abs())))
        .collect::<Result<Vec<_>>>()?;
    let mut eq = [0.0f64; 3];
    let mut min_det = f64::INFINITY;
    for (r, d) in &per_point {
        for i in 0..3 {
            eq[i] = eq[i].max(r[i]);
        }
        min_det = min_det.min(*d);
    }
    let max_residual = eq.iter().copied().fold(0.0, f64::max);
    Ok(CartanResidual { equations: eq, min_det, overall: FormResidual { max_residual, samples: points.len() } })
}

/// First variant in `Sl2Variant::ALL` whose K = −1 residual is below `tol` on every point.
pub fn select_sl2_variant(points: &[ChartPoint], tol: f64) -> Result<Sl2Variant> {
    for v in Sl2Variant::ALL {
        let r = check_cartan_k(&|p: &ChartPoint| sl2_coframe_variant(v, p), -1.0, points, DiffOptions::default())?;
        if r.overall.max_residual < tol {
            return Ok(v);
        }
    }
    Err(Error::Verification("no sign variant of the H² × R coframe satisfies the structure equations".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn sl2_points() -> Vec<ChartPoint> {
        (0..12)
            .map(|k| {
                let t = k as f64;
                ChartPoint::sl2((0.9 * t).sin() * 2.0, 0.4 + 0.2 * t, -3.0 + 0.5 * t).unwrap()
            })
            .collect()
    }

    #[test]
    fn e2_formulas() {
        let f = e2_coframe(&ChartPoint::e2(0.1, 0.2, 0.0)).unwrap();
        assert_eq!(f, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        let f = e2_coframe(&ChartPoint::e2(0.0, 0.0, FRAC_PI_2)).unwrap();
        assert!((f[0][1] - 1.0).abs() < 1e-15 && f[0][0].abs() < 1e-15);
        assert!((f[1][0] + 1.0).abs() < 1e-15);
        assert!(e2_coframe(&ChartPoint::sl2(0.0, 1.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn sl2_variant_selection() {
        let pts = sl2_points();
        assert_eq!(select_sl2_variant(&pts, 1e-6).unwrap(), SL2_VARIANT);
        let frozen = check_cartan_k(&|p: &ChartPoint| sl2_coframe_variant(Sl2Variant::ALL[0], p), -1.0, &pts, DiffOptions::default()).unwrap();
        assert!(frozen.overall.max_residual > 0.1);
    }

    #[test]
    fn flat_coframe_residuals() {
        let pts = [ChartPoint::e2(0.0, 0.0, 0.0)];
        let r = check_cartan_k(&flat_coframe, -1.0, &pts, DiffOptions::default()).unwrap();
        // dω₁ = 0 but ω₂∧ω₃ = dy∧dθ; dω₃ = 0 against K dx∧dy
        assert!((r.equations[0] - 1.0).abs() < 1e-12);
        assert!((r.equations[2] - 1.0).abs() < 1e-12);
    }
}
