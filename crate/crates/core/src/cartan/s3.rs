use super::forms::{s3_jacobian, wedge12, ChartPoint, Covector, TwoForm};
use crate::error::{domain, Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// The two families of taut contact circles on S³ in ambient coordinates
/// `z₁ = x₁ + i x₂`, `z₂ = x₃ + i x₄`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "param", rename_all = "lowercase")]
pub enum TautFamily {
    /// `a z₁dz₂ − (1−a) z₂dz₁` with `0 < Re a < 1`.
    A(Complex64),
    /// `n z₁dz₂ − z₂dz₁ + z₂ⁿ dz₂` with `n ≥ 1`.
    N(u32),
}

impl TautFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TautFamily::A(a) if !(a.re > 0.0 && a.re < 1.0 && a.im.is_finite()) => {
                domain(format!("a = {a} is outside the slab 0 < Re a < 1"))
            }
            TautFamily::N(0) => domain("n must be at least 1"),
            _ => Ok(()),
        }
    }

    /// `c` in `dω = c dz₁∧dz₂`.
    pub fn d_coefficient(&self) -> Complex64 {
        match *self {
            TautFamily::A(_) => Complex64::new(1.0, 0.0),
            TautFamily::N(n) => Complex64::new(f64::from(n) + 1.0, 0.0),
        }
    }

    /// Coefficients of `dz₁` and `dz₂` at the ambient point.
    pub fn dz_coefficients(&self, z1: Complex64, z2: Complex64) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            TautFamily::A(a) => (-(one - a) * z2, a * z1),
            TautFamily::N(n) => (-z2, f64::from(n) * z1 + z2.powu(n)),
        }
    }
}

pub fn ambient_complex(p: &[f64; 4]) -> (Complex64, Complex64) {
    (Complex64::new(p[0], p[1]), Complex64::new(p[2], p[3]))
}

/// Ambient coefficients of ω on `(dx₁, …, dx₄)`.
pub fn ambient_omega(fam: &TautFamily, p: &[f64; 4]) -> [Complex64; 4] {
    let (z1, z2) = ambient_complex(p);
    let (c1, c2) = fam.dz_coefficients(z1, z2);
    let i = Complex64::new(0.0, 1.0);
    [c1, c1 * i, c2, c2 * i]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TautEvaluation {
    /// ω in chart components.
    pub omega: [Complex64; 3],
    /// dω in chart 2-form components.
    pub d_omega: [Complex64; 3],
}

/// ω and its exact exterior derivative pulled back to a stereographic chart.
pub fn su2_taut_circle(fam: &TautFamily, p: &ChartPoint) -> Result<TautEvaluation> {
    fam.validate()?;
    let x = p.ambient().ok_or_else(|| Error::InvalidInput("expected an S³ chart point".into()))?;
    let j = s3_jacobian(p.chart, &p.coords)?;
    let amb = ambient_omega(fam, &x);
    let omega = [0, 1, 2].map(|k| (0..4).map(|i| amb[i] * j[i][k]).sum::<Complex64>());
    let i = Complex64::new(0.0, 1.0);
    // dz₁ and dz₂ on the chart basis vectors
    let a = [0, 1, 2].map(|k| j[0][k] + i * j[1][k]);
    let b = [0, 1, 2].map(|k| j[2][k] + i * j[3][k]);
    let pair = |r: usize, s: usize| a[r] * b[s] - a[s] * b[r];
    let c = fam.d_coefficient();
    let d_omega = [c * pair(1, 2), c * pair(2, 0), c * pair(0, 1)];
    Ok(TautEvaluation { omega, d_omega })
}

/// Real pair `(ω₁, ω₂)` with derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TautPair {
    pub w1: Covector,
    pub w2: Covector,
    pub dw1: TwoForm,
    pub dw2: TwoForm,
}

impl TautPair {
    pub fn from_complex(omega: &[Complex64; 3], d_omega: &[Complex64; 3]) -> Self {
        TautPair {
            w1: omega.map(|c| c.re),
            w2: omega.map(|c| c.im),
            dw1: d_omega.map(|c| c.re),
            dw2: d_omega.map(|c| c.im),
        }
    }

    /// `(ω₁cos φ − ω₂sin φ, ω₁sin φ + ω₂cos φ)`.
    pub fn rotated(&self, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        let mix = |a: &[f64; 3], b: &[f64; 3], x: f64, y: f64| [0, 1, 2].map(|i| x * a[i] + y * b[i]);
        TautPair {
            w1: mix(&self.w1, &self.w2, c, -s),
            w2: mix(&self.w1, &self.w2, s, c),
            dw1: mix(&self.dw1, &self.dw2, c, -s),
            dw2: mix(&self.dw1, &self.dw2, s, c),
        }
    }

    pub fn volume(&self) -> f64 {
        wedge12(&self.w1, &self.dw1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TautResidual {
    /// max `|ω₁∧dω₁ − ω₂∧dω₂|`
    pub volume_mismatch: f64,
    /// max `|ω₁∧dω₂ + ω₂∧dω₁|`
    pub mixed_sum: f64,
    /// max of `|ω₁∧dω₂|` and `|ω₂∧dω₁|`; zero for Cartan structures
    pub mixed_max: f64,
    /// min `|ω₁∧dω₁|`
    pub min_volume: f64,
    pub max_residual: f64,
    pub samples: usize,
}

pub fn taut_residual_at(t: &TautPair) -> (f64, f64, f64, f64) {
    let v1 = wedge12(&t.w1, &t.dw1);
    let v2 = wedge12(&t.w2, &t.dw2);
    let m12 = wedge12(&t.w1, &t.dw2);
    let m21 = wedge12(&t.w2, &t.dw1);
    ((v1 - v2).abs(), (m12 + m21).abs(), m12.abs().max(m21.abs()), v1.abs())
}

/// Residuals of `ω₁∧dω₁ = ω₂∧dω₂ ≠ 0` and `ω₁∧dω₂ = −ω₂∧dω₁` over the sample points.
pub fn check_taut<F>(pair: &F, points: &[ChartPoint]) -> Result<TautResidual>
where
    F: Fn(&ChartPoint) -> Result<TautPair> + Sync,
{
    let vals = points.par_iter().map(|p| Ok(taut_residual_at(&pair(p)?))).collect::<Result<Vec<_>>>()?;
    let mut r = TautResidual {
        volume_mismatch: 0.0,
        mixed_sum: 0.0,
        mixed_max: 0.0,
        min_volume: f64::INFINITY,
        max_residual: 0.0,
        samples: points.len(),
    };
    for (a, b, c, d) in vals {
        r.volume_mismatch = r.volume_mismatch.max(a);
        r.mixed_sum = r.mixed_sum.max(b);
        r.mixed_max = r.mixed_max.max(c);
        r.min_volume = r.min_volume.min(d);
    }
    r.max_residual = r.volume_mismatch.max(r.mixed_sum);
    Ok(r)
}

/// Taut pair of one S³ family at a chart point.
pub fn family_pair(fam: &TautFamily, p: &ChartPoint) -> Result<TautPair> {
    let e = su2_taut_circle(fam, p)?;
    Ok(TautPair::from_complex(&e.omega, &e.d_omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::forms::{numeric_d, DiffOptions};

    fn points() -> Vec<ChartPoint> {
        (0..40)
            .map(|k| {
                let t = k as f64 * 0.37;
                let v = [t.sin(), (1.3 * t).cos(), (0.7 * t + 1.0).sin(), (2.1 * t).cos() - 0.2];
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                ChartPoint::s3(v.map(|x| x / n)).unwrap()
            })
            .collect()
    }

    #[test]
    fn value_at_first_axis() {
        let fam = TautFamily::A(Complex64::new(0.5, 0.0));
        let w = ambient_omega(&fam, &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(w[0], Complex64::new(0.0, 0.0));
        assert_eq!(w[2], Complex64::new(0.5, 0.0));
        assert_eq!(w[3], Complex64::new(0.0, 0.5));
    }

    #[test]
    fn families_are_taut() {
        for fam in [TautFamily::A(Complex64::new(0.5, 0.0)), TautFamily::A(Complex64::new(0.5, 0.25)), TautFamily::N(1), TautFamily::N(2)] {
            let r = check_taut(&|p: &ChartPoint| family_pair(&fam, p), &points()).unwrap();
            assert!(r.max_residual < 1e-9, "{fam:?} {r:?}");
            assert!(r.min_volume > 1e-6);
        }
        let cartan = check_taut(&|p: &ChartPoint| family_pair(&TautFamily::A(Complex64::new(0.5, 0.0)), p), &points()).unwrap();
        assert!(cartan.mixed_max < 1e-12);
    }

    #[test]
    fn exact_derivative_matches_differences() {
        let fam = TautFamily::N(3);
        for p in points().iter().take(10) {
            let e = su2_taut_circle(&fam, p).unwrap();
            for part in [0usize, 1] {
                let f = |q: &ChartPoint| {
                    su2_taut_circle(&fam, q).map(|e| e.omega.map(|c| if part == 0 { c.re } else { c.im }))
                };
                let d = numeric_d(&f, p, DiffOptions::default()).unwrap();
                for c in 0..3 {
                    let exact = if part == 0 { e.d_omega[c].re } else { e.d_omega[c].im };
                    assert!((d[c] - exact).abs() < 1e-6 * (1.0 + exact.abs()));
                }
            }
        }
    }

    #[test]
    fn parameter_domain() {
        assert!(su2_taut_circle(&TautFamily::A(Complex64::new(1.5, 0.0)), &points()[0]).is_err());
        assert!(su2_taut_circle(&TautFamily::N(0), &points()[0]).is_err());
    }
}
