use super::closed::{gv_closed_form, S3_VOLUME};
use super::frame::{cross, quaternion_frame, solve_gamma, AmbientForm};
use crate::cartan::{s3_jacobian, Chart, ChartPoint, TautFamily};
use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

type C = Complex64;

pub const MIN_RESOLUTION: usize = 8;
pub const MAX_RESOLUTION: usize = 256;
pub const DEFAULT_RESOLUTION: usize = 64;

/// Two stereographic charts on the cube `[−L, L]³` with a smooth partition of unity
/// in `log₂|u|`, sampled at cell midpoints with `pad` extra layers for differences.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct S3Atlas {
    pub resolution: usize,
    pub half_width: f64,
    pub pad: usize,
}

fn bump(y: f64) -> f64 {
    if y > 0.0 {
        (-1.0 / y).exp()
    } else {
        0.0
    }
}

impl S3Atlas {
    pub fn new(resolution: usize) -> Result<Self> {
        if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
            return invalid(format!("resolution {resolution} outside {MIN_RESOLUTION}..={MAX_RESOLUTION}"));
        }
        Ok(S3Atlas { resolution, half_width: 2.0, pad: 2 })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.resolution as f64
    }

    /// Nodes per axis including padding.
    pub fn nodes(&self) -> usize {
        self.resolution + 2 * self.pad
    }

    pub fn coordinate(&self, index: usize) -> f64 {
        -self.half_width + self.spacing() * (index as f64 - self.pad as f64 + 0.5)
    }

    /// Chart weight: 1 for `|u| ≤ 1/2`, 0 for `|u| ≥ 2`, and the two charts sum to 1.
    pub fn weight(u: &[f64; 3]) -> f64 {
        let r = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
        if r == 0.0 {
            return 1.0;
        }
        let t = r.log2();
        let (g1, g2) = (bump(1.0 - t), bump(1.0 + t));
        g1 / (g1 + g2)
    }

    /// `Σ w |det[x, J]| h³` over both charts.
    pub fn volume(&self) -> f64 {
        let h3 = self.spacing().powi(3);
        let slabs: Vec<f64> = (self.pad..self.pad + self.resolution)
            .into_par_iter()
            .map(|i| {
                let mut s = 0.0;
                for chart in [Chart::S3North, Chart::S3South] {
                    for j in self.pad..self.pad + self.resolution {
                        for k in self.pad..self.pad + self.resolution {
                            let u = [self.coordinate(i), self.coordinate(j), self.coordinate(k)];
                            let w = Self::weight(&u);
                            if w > 0.0 {
                                s += w * orientation_det(chart, &u).abs();
                            }
                        }
                    }
                }
                s
            })
            .collect();
        slabs.iter().sum::<f64>() * h3
    }
}

fn ambient(chart: Chart, u: &[f64; 3]) -> [f64; 4] {
    ChartPoint { chart, coords: *u }.ambient().expect("S³ chart")
}

/// `det[x, ∂x/∂u₁, ∂x/∂u₂, ∂x/∂u₃]`.
fn orientation_det(chart: Chart, u: &[f64; 3]) -> f64 {
    let x = ambient(chart, u);
    let j = s3_jacobian(chart, u).expect("S³ chart");
    let m = nalgebra::Matrix4::from_fn(|r, c| if c == 0 { x[r] } else { j[r][c - 1] });
    m.determinant()
}

/// Probes applied to ω and γ before integration. All zero gives the plain invariant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GvOptions {
    /// ω ↦ e^{iφ}ω.
    pub phase: f64,
    /// ω ↦ exp(ε q)ω with `q = x₁x₃ + x₄/2`.
    pub log_scale_eps: f64,
    /// γ ↦ γ + ε f ω with `f = x₁x₂ + i x₃/2`.
    pub gauge_eps: f64,
}

fn node_gamma(form: &AmbientForm, chart: Chart, u: &[f64; 3], opts: &GvOptions) -> Result<[C; 3]> {
    let x = ambient(chart, u);
    let e = quaternion_frame(&x);
    let (mut w, mut b) = form.frame_components(&x);
    if opts.log_scale_eps != 0.0 {
        let eps = opts.log_scale_eps;
        let grad = [x[2], 0.0, x[0], 0.5];
        let dq = [0, 1, 2].map(|k| C::new(eps * (0..4).map(|i| grad[i] * e[k][i]).sum::<f64>(), 0.0));
        let v = (eps * (x[0] * x[2] + 0.5 * x[3])).exp();
        let extra = cross(&dq, &w);
        b = [0, 1, 2].map(|i| v * (b[i] + extra[i]));
        w = w.map(|c| c * v);
    }
    if opts.phase != 0.0 {
        let r = C::from_polar(1.0, opts.phase);
        w = w.map(|c| c * r);
        b = b.map(|c| c * r);
    }
    let mut g = solve_gamma(&w, &b)?;
    if opts.gauge_eps != 0.0 {
        let f = C::new(x[0] * x[1], 0.5 * x[2]) * opts.gauge_eps;
        g = [0, 1, 2].map(|k| g[k] + f * w[k]);
    }
    let j = s3_jacobian(chart, u)?;
    // γ(∂/∂u_i) = Σ_k γ(E_k) ⟨E_k, ∂x/∂u_i⟩
    Ok([0, 1, 2].map(|i| (0..3).map(|k| g[k] * (0..4).map(|r| e[k][r] * j[r][i]).sum::<f64>()).sum()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GvEstimate {
    pub value: Complex64,
    pub closed_form: Complex64,
    /// `|value − closed_form| / |closed_form|`.
    pub rel_err: f64,
    pub resolution: usize,
    /// Quadrature of the volume form with the same atlas.
    pub volume: f64,
    pub volume_rel_err: f64,
    /// `|v(N) − v(N/2)| / 3`, when a coarser pass was run.
    pub error_estimate: Option<f64>,
    pub coarse_value: Option<Complex64>,
}

/// `∫ γ∧dγ` on one chart with the chart weight, 4th-order central differences.
fn chart_integral(form: &AmbientForm, chart: Chart, atlas: &S3Atlas, opts: &GvOptions) -> Result<C> {
    let m = atlas.nodes();
    let h = atlas.spacing();
    let slabs = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::with_capacity(m * m);
            for j in 0..m {
                for k in 0..m {
                    let u = [atlas.coordinate(i), atlas.coordinate(j), atlas.coordinate(k)];
                    out.push(node_gamma(form, chart, &u, opts)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let at = |i: usize, j: usize, k: usize| &slabs[i][j * m + k];
    let p = atlas.pad;
    let n = atlas.resolution;
    let d = |f: &dyn Fn(isize) -> C| (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h);
    let partial: Vec<C> = (p..p + n)
        .into_par_iter()
        .map(|i| {
            let mut s = C::new(0.0, 0.0);
            for j in p..p + n {
                for k in p..p + n {
                    let u = [atlas.coordinate(i), atlas.coordinate(j), atlas.coordinate(k)];
                    let w = S3Atlas::weight(&u);
                    if w == 0.0 {
                        continue;
                    }
                    let off = |o: isize| (i as isize + o) as usize;
                    let offj = |o: isize| (j as isize + o) as usize;
                    let offk = |o: isize| (k as isize + o) as usize;
                    let dx = |c: usize| d(&|o| at(off(o), j, k)[c]);
                    let dy = |c: usize| d(&|o| at(i, offj(o), k)[c]);
                    let dz = |c: usize| d(&|o| at(i, j, offk(o))[c]);
                    let curl = [dy(2) - dz(1), dz(0) - dx(2), dx(1) - dy(0)];
                    let g = at(i, j, k);
                    let dens = g[0] * curl[0] + g[1] * curl[1] + g[2] * curl[2];
                    s += dens * (w * orientation_det(chart, &u).signum());
                }
            }
            s
        })
        .collect();
    Ok(partial.iter().sum::<C>() * h.powi(3))
}

fn raw_integral(form: &AmbientForm, atlas: &S3Atlas, opts: &GvOptions) -> Result<C> {
    Ok(chart_integral(form, Chart::S3North, atlas, opts)? + chart_integral(form, Chart::S3South, atlas, opts)?)
}

/// Quadrature of the complex Godbillon–Vey invariant at one resolution.
pub fn gv_integral(fam: &TautFamily, resolution: usize, opts: &GvOptions) -> Result<GvEstimate> {
    fam.validate()?;
    let atlas = S3Atlas::new(resolution)?;
    let value = raw_integral(&AmbientForm::Family(*fam), &atlas, opts)?;
    let closed_form = gv_closed_form(fam)?;
    let volume = atlas.volume();
    Ok(GvEstimate {
        value,
        closed_form,
        rel_err: (value - closed_form).norm() / closed_form.norm(),
        resolution,
        volume,
        volume_rel_err: (volume / S3_VOLUME - 1.0).abs(),
        error_estimate: None,
        coarse_value: None,
    })
}

/// Quadrature at `N` and `N/2`; fails when the relative error estimate exceeds `tol`.
pub fn gv_estimate(fam: &TautFamily, resolution: usize, tol: Option<f64>, opts: &GvOptions) -> Result<GvEstimate> {
    let mut fine = gv_integral(fam, resolution, opts)?;
    if resolution / 2 >= MIN_RESOLUTION {
        let atlas = S3Atlas::new(resolution / 2)?;
        let coarse = raw_integral(&AmbientForm::Family(*fam), &atlas, opts)?;
        let err = (fine.value - coarse).norm() / 3.0;
        fine.coarse_value = Some(coarse);
        fine.error_estimate = Some(err);
        if let Some(t) = tol {
            if err > t * fine.value.norm() {
                return Err(Error::Verification(format!(
                    "resolution {resolution} too coarse: error estimate {:.3e} exceeds tolerance {t:e}",
                    err / fine.value.norm()
                )));
            }
        }
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_of_unity() {
        for r in [0.3, 0.7, 1.0, 1.4, 1.9] {
            let u = [r, 0.0, 0.0];
            let inv = [1.0 / r, 0.0, 0.0];
            assert!((S3Atlas::weight(&u) + S3Atlas::weight(&inv) - 1.0).abs() < 1e-14);
        }
        assert_eq!(S3Atlas::weight(&[2.5, 0.0, 0.0]), 0.0);
        assert_eq!(S3Atlas::weight(&[0.4, 0.0, 0.0]), 1.0);
    }

    #[test]
    fn volume_converges() {
        let v = S3Atlas::new(32).unwrap().volume();
        assert!((v / S3_VOLUME - 1.0).abs() < 1e-3);
    }

    #[test]
    fn a_family_coarse() {
        let e = gv_integral(&TautFamily::A(C::new(0.5, 0.0)), 24, &GvOptions::default()).unwrap();
        assert!(e.rel_err < 5e-3, "{e:?}");
        assert!(S3Atlas::new(4).is_err());
    }
}
