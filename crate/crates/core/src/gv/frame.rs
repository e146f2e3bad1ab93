use crate::cartan::TautFamily;
use crate::error::{domain, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type C = Complex64;
const ZERO: C = C::new(0.0, 0.0);
const I: C = C::new(0.0, 1.0);

/// Orthonormal tangent frame `(x·i, x·j, x·k)` at `x = x₁ + x₂i + x₃j + x₄k`.
pub fn quaternion_frame(x: &[f64; 4]) -> [[f64; 4]; 3] {
    let [a0, a1, a2, a3] = *x;
    [[-a1, a0, a3, -a2], [-a2, -a3, a0, a1], [-a3, a2, -a1, a0]]
}

fn dz1() -> [C; 4] {
    [C::new(1.0, 0.0), I, ZERO, ZERO]
}

fn dz2() -> [C; 4] {
    [ZERO, ZERO, C::new(1.0, 0.0), I]
}

fn dz1_bar() -> [C; 4] {
    [C::new(1.0, 0.0), -I, ZERO, ZERO]
}

fn wedge_amb(a: &[C; 4], b: &[C; 4]) -> [[C; 4]; 4] {
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[i] * b[j] - a[j] * b[i];
        }
    }
    m
}

/// A complex 1-form on R⁴ with its exterior derivative, restricted to S³ on use.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum AmbientForm {
    Family(TautFamily),
    /// `a z₁dz₂ − (1−a) z₂dz̄₁`, which is not formally integrable.
    ConjugatedA(Complex64),
}

impl AmbientForm {
    pub fn omega(&self, x: &[f64; 4]) -> [C; 4] {
        let z1 = C::new(x[0], x[1]);
        let z2 = C::new(x[2], x[3]);
        match self {
            AmbientForm::Family(f) => crate::cartan::ambient_omega(f, x),
            AmbientForm::ConjugatedA(a) => {
                let one = C::new(1.0, 0.0);
                let (p, q) = (dz2(), dz1_bar());
                [0, 1, 2, 3].map(|i| *a * z1 * p[i] - (one - a) * z2 * q[i])
            }
        }
    }

    /// `dω` as an antisymmetric matrix, `dω(v, w) = vᵀ M w`.
    pub fn d_omega(&self, _x: &[f64; 4]) -> [[C; 4]; 4] {
        match self {
            AmbientForm::Family(f) => {
                let c = f.d_coefficient();
                wedge_amb(&dz1(), &dz2()).map(|r| r.map(|e| c * e))
            }
            AmbientForm::ConjugatedA(a) => {
                let one = C::new(1.0, 0.0);
                let m1 = wedge_amb(&dz1(), &dz2());
                let m2 = wedge_amb(&dz2(), &dz1_bar());
                let mut m = [[ZERO; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        m[i][j] = *a * m1[i][j] - (one - a) * m2[i][j];
                    }
                }
                m
            }
        }
    }

    /// `ω(E_k)` and the 2-form components `(dω(E₂,E₃), dω(E₃,E₁), dω(E₁,E₂))`.
    pub fn frame_components(&self, x: &[f64; 4]) -> ([C; 3], [C; 3]) {
        let e = quaternion_frame(x);
        let w = self.omega(x);
        let m = self.d_omega(x);
        let omega = [0, 1, 2].map(|k| (0..4).map(|i| w[i] * e[k][i]).sum::<C>());
        let pair = |a: usize, b: usize| {
            let mut s = ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    s += m[i][j] * (e[a][i] * e[b][j]);
                }
            }
            s
        };
        (omega, [pair(1, 2), pair(2, 0), pair(0, 1)])
    }
}

pub fn cross(a: &[C; 3], b: &[C; 3]) -> [C; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn dot(a: &[C; 3], b: &[C; 3]) -> C {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: &[C; 3]) -> f64 {
    a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Solution of `γ∧ω = dω` Hermitian-orthogonal to ω, in an orthonormal frame where
/// a 2-form is stored as `(β₂₃, β₃₁, β₁₂)`.
pub fn solve_gamma(omega: &[C; 3], d_omega: &[C; 3]) -> Result<[C; 3]> {
    let n2: f64 = omega.iter().map(|c| c.norm_sqr()).sum();
    if n2 < 1e-24 {
        return domain("ω vanishes at this point");
    }
    let integrability = dot(omega, d_omega).norm();
    if integrability > 1e-8 {
        return Err(Error::Verification(format!("ω∧dω = {integrability:e}; dω = γ∧ω has no solution")));
    }
    let conj = omega.map(|c| c.conj());
    Ok(cross(&conj, d_omega).map(|c| c / n2))
}

/// `|γ∧ω − dω|` and `|⟨γ, ω⟩|` for a candidate γ.
pub fn gamma_residuals(gamma: &[C; 3], omega: &[C; 3], d_omega: &[C; 3]) -> (f64, f64) {
    let w = cross(gamma, omega);
    let r = [0, 1, 2].map(|i| w[i] - d_omega[i]);
    let herm = (0..3).map(|i| gamma[i] * omega[i].conj()).sum::<C>();
    (norm3(&r), herm.norm())
}

/// max `|ω∧dω|` over the sample points.
pub fn formal_integrability_residual(form: &AmbientForm, points: &[[f64; 4]]) -> f64 {
    points
        .iter()
        .map(|x| {
            let (w, b) = form.frame_components(x);
            dot(&w, &b).norm()
        })
        .fold(0.0, f64::max)
}

/// Vector field spanning `ker ω₁ ∩ ker ω₂`, extended to R⁴ through the quaternion frame.
pub fn transverse_field(form: &AmbientForm, x: &[f64; 4]) -> [f64; 4] {
    let (w, _) = form.frame_components(x);
    let re = w.map(|c| c.re);
    let im = w.map(|c| c.im);
    let y = [re[1] * im[2] - re[2] * im[1], re[2] * im[0] - re[0] * im[2], re[0] * im[1] - re[1] * im[0]];
    let e = quaternion_frame(x);
    [0, 1, 2, 3].map(|i| (0..3).map(|k| y[k] * e[k][i]).sum())
}

fn rk4_flow(form: &AmbientForm, x: &[f64; 4], t: f64, steps: usize) -> [f64; 4] {
    let h = t / steps as f64;
    let add = |a: &[f64; 4], b: &[f64; 4], s: f64| [0, 1, 2, 3].map(|i| a[i] + s * b[i]);
    let mut p = *x;
    for _ in 0..steps {
        let k1 = transverse_field(form, &p);
        let k2 = transverse_field(form, &add(&p, &k1, h / 2.0));
        let k3 = transverse_field(form, &add(&p, &k2, h / 2.0));
        let k4 = transverse_field(form, &add(&p, &k3, h));
        p = [0, 1, 2, 3].map(|i| p[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransverseCheck {
    /// max `|L_Yω ∧ ω|` in the orthonormal frame.
    pub proportionality_residual: f64,
    /// max distance between the flow derivative and `i_Y dω`.
    pub cartan_formula_gap: f64,
    pub samples: usize,
}

/// `L_Yω` at `x` on the frame vectors, by central differences of the flow pullback
/// in time and of the flow map in space.
pub fn lie_derivative_by_flow(form: &AmbientForm, x: &[f64; 4], t: f64, delta: f64) -> [C; 3] {
    let e = quaternion_frame(x);
    let pull = |s: f64, v: &[f64; 4]| -> C {
        let shift = |sign: f64| [0, 1, 2, 3].map(|i| x[i] + sign * delta * v[i]);
        let fp = rk4_flow(form, &shift(1.0), s, 4);
        let fm = rk4_flow(form, &shift(-1.0), s, 4);
        let dphi = [0, 1, 2, 3].map(|i| (fp[i] - fm[i]) / (2.0 * delta));
        let y = rk4_flow(form, x, s, 4);
        let w = form.omega(&y);
        (0..4).map(|i| w[i] * dphi[i]).sum()
    };
    [0, 1, 2].map(|k| (pull(t, &e[k]) - pull(-t, &e[k])) / (2.0 * t))
}

/// Checks that the flow of `Y ∈ ker ω₁ ∩ ker ω₂` preserves the line field of ω.
pub fn transverse_conformal_check(form: &AmbientForm, points: &[[f64; 4]]) -> Result<TransverseCheck> {
    let mut prop: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for x in points {
        let (w, b) = form.frame_components(x);
        if norm3(&w) < 1e-9 {
            return domain("ω vanishes at a sample point");
        }
        let l = lie_derivative_by_flow(form, x, 1e-4, 1e-4);
        prop = prop.max(norm3(&cross(&l, &w)));
        // i_Y dω on the frame, using dω(Y, E_k) with Y = Σ y_j E_j
        let re = w.map(|c| c.re);
        let im = w.map(|c| c.im);
        let y = [re[1] * im[2] - re[2] * im[1], re[2] * im[0] - re[0] * im[2], re[0] * im[1] - re[1] * im[0]];
        let yc = y.map(|v| C::new(v, 0.0));
        // β(y, E_k) = (β × y)_k for a 2-form stored as a Hodge vector
        let exact = cross(&b, &yc);
        gap = gap.max(norm3(&[0, 1, 2].map(|k| l[k] - exact[k])));
    }
    Ok(TransverseCheck { proportionality_residual: prop, cartan_formula_gap: gap, samples: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts() -> Vec<[f64; 4]> {
        (0..25)
            .map(|k| {
                let t = k as f64 * 0.61;
                let v = [t.cos(), (1.7 * t).sin(), (0.3 * t + 0.4).cos(), (2.3 * t).sin() + 0.1];
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.map(|x| x / n)
            })
            .collect()
    }

    #[test]
    fn frame_is_orthonormal_and_tangent() {
        for x in pts() {
            let e = quaternion_frame(&x);
            for a in 0..3 {
                let t: f64 = (0..4).map(|i| e[a][i] * x[i]).sum();
                assert!(t.abs() < 1e-15);
                for b in 0..3 {
                    let g: f64 = (0..4).map(|i| e[a][i] * e[b][i]).sum();
                    assert!((g - if a == b { 1.0 } else { 0.0 }).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn integrability() {
        let a = AmbientForm::Family(TautFamily::A(C::new(0.5, 0.0)));
        let n = AmbientForm::Family(TautFamily::N(3));
        assert!(formal_integrability_residual(&a, &pts()) < 1e-13);
        assert!(formal_integrability_residual(&n, &pts()) < 1e-13);
        let bad = AmbientForm::ConjugatedA(C::new(0.5, 0.0));
        assert!(formal_integrability_residual(&bad, &pts()) > 1e-3);
    }

    #[test]
    fn gamma_solve() {
        let f = AmbientForm::Family(TautFamily::A(C::new(0.5, 0.0)));
        let (w, b) = f.frame_components(&[1.0, 0.0, 0.0, 0.0]);
        let g = solve_gamma(&w, &b).unwrap();
        let (r, h) = gamma_residuals(&g, &w, &b);
        assert!(r < 1e-10 && h < 1e-10);
        let g0 = solve_gamma(&w, &[ZERO; 3]).unwrap();
        assert!(g0.iter().all(|c| c.norm() == 0.0));
        assert!(solve_gamma(&[ZERO; 3], &b).is_err());
        let bad = AmbientForm::ConjugatedA(C::new(0.5, 0.0));
        let (w, b) = bad.frame_components(&pts()[3]);
        assert!(solve_gamma(&w, &b).is_err());
    }

    #[test]
    fn flow_preserves_line_field() {
        for fam in [TautFamily::A(C::new(0.5, 0.0)), TautFamily::N(1)] {
            let r = transverse_conformal_check(&AmbientForm::Family(fam), &pts()[..8]).unwrap();
            assert!(r.proportionality_residual < 1e-6, "{fam:?} {r:?}");
            assert!(r.cartan_formula_gap < 1e-6, "{fam:?} {r:?}");
        }
    }
}
