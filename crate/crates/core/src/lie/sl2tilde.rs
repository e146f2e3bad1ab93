use super::psl2::{mobius_act, MobiusClass, Psl2Element};
use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

const I: Complex64 = Complex64::new(0.0, 1.0);
const MAX_STEPS: usize = 1 << 16;

/// Element of the universal cover of PSL₂ℝ acting on `H² × R` by
/// `(z, θ) ↦ ((az+b)/(cz+d), θ − 2 arg(cz+d))`, with the branch of the
/// argument pinned by `base_disp`, the θ-displacement at `z = i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2TildeElement {
    pub mat: Psl2Element,
    pub base_disp: f64,
}

fn wrap_pi(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    if y <= -PI {
        y + TAU
    } else {
        y
    }
}

/// Continuous change of `arg f(s)` for `s` running from `s0` to `s1`, by adaptive
/// bisection until every step moves the argument by less than π/2.
pub fn continued_arg_change<F: Fn(f64) -> Complex64>(f: F, s0: f64, s1: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut steps = 0usize;
    let mut stack = vec![(s0, s1, f(s0), f(s1))];
    // depth-first from the left so the accumulated sum follows the path order
    while let Some((a, b, fa, fb)) = stack.pop() {
        let delta = wrap_pi(fb.arg() - fa.arg());
        if delta.abs() < PI / 2.0 {
            total += delta;
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::Verification("argument continuation exceeded 2^16 steps".into()));
            }
            continue;
        }
        let m = 0.5 * (a + b);
        if !(m > a && m < b) {
            return Err(Error::Verification("argument continuation step underflow".into()));
        }
        let fm = f(m);
        if fm.norm() == 0.0 {
            return Err(Error::Verification("path passes through zero".into()));
        }
        stack.push((m, b, fm, fb));
        stack.push((a, m, fa, fm));
    }
    Ok(total)
}

/// Point at parameter `s` on the hyperbolic geodesic from `i` to `z`
/// (a radius in the disk model).
fn geodesic_from_i(z: Complex64, s: f64) -> Complex64 {
    let zeta = (z - I) / (z + I);
    let w = zeta * s;
    I * (1.0 + w) / (1.0 - w)
}

impl Sl2TildeElement {
    pub const IDENTITY: Sl2TildeElement = Sl2TildeElement { mat: Psl2Element::IDENTITY, base_disp: 0.0 };

    /// Builds a group element, checking `base_disp ≡ −2 arg(ci+d) (mod 2π)`.
    pub fn new(mat: Psl2Element, base_disp: f64) -> Result<Self> {
        let g = Sl2TildeElement { mat, base_disp };
        if g.branch_residual() > 1e-9 {
            return invalid(format!("base_disp {base_disp} is not a branch of −2 arg(ci+d)"));
        }
        Ok(g)
    }

    /// An isometry of `H² × R` that need not be a group element (arbitrary real shift).
    pub fn isometry(mat: Psl2Element, base_disp: f64) -> Self {
        Sl2TildeElement { mat, base_disp }
    }

    /// Distance of `base_disp` from the nearest branch of `−2 arg(ci+d)`.
    pub fn branch_residual(&self) -> f64 {
        let principal = -2.0 * Complex64::new(self.mat.d, self.mat.c).arg();
        wrap_pi(self.base_disp - principal).abs()
    }

    pub fn is_group_element(&self) -> bool {
        self.branch_residual() < 1e-9
    }

    /// Central element `(identity, 2πk)`.
    pub fn central(k: f64) -> Self {
        Sl2TildeElement { mat: Psl2Element::IDENTITY, base_disp: TAU * k }
    }

    /// Continuous θ-displacement of the action at `z`.
    pub fn theta_displacement(&self, z: Complex64) -> Result<f64> {
        if z.im <= 0.0 {
            return invalid("point not in the upper half-plane");
        }
        let (c, d) = (self.mat.c, self.mat.d);
        if c == 0.0 {
            return Ok(self.base_disp);
        }
        let change = continued_arg_change(|s| c * geodesic_from_i(z, s) + d, 0.0, 1.0)?;
        Ok(self.base_disp - 2.0 * change)
    }

    pub fn act(&self, z: Complex64, theta: f64) -> Result<(Complex64, f64)> {
        Ok((mobius_act(&self.mat, z), theta + self.theta_displacement(z)?))
    }

    /// Product via the cocycle `disp_{gh}(i) = disp_h(i) + disp_g(h·i)`.
    pub fn mul(&self, h: &Sl2TildeElement) -> Result<Sl2TildeElement> {
        let hi = mobius_act(&h.mat, I);
        Ok(Sl2TildeElement { mat: self.mat.mul(&h.mat), base_disp: h.base_disp + self.theta_displacement(hi)? })
    }

    pub fn inv(&self) -> Result<Sl2TildeElement> {
        let m = self.mat.inv();
        let back = mobius_act(&m, I);
        Ok(Sl2TildeElement { mat: m, base_disp: -self.theta_displacement(back)? })
    }

    pub fn pow(&self, n: i64) -> Result<Sl2TildeElement> {
        let base = if n < 0 { self.inv()? } else { *self };
        let mut acc = Sl2TildeElement::IDENTITY;
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, h: &Sl2TildeElement) -> Result<Sl2TildeElement> {
        self.mul(h)?.mul(&self.inv()?)?.mul(&h.inv()?)
    }

    pub fn conjugate_by(&self, k: &Sl2TildeElement) -> Result<Sl2TildeElement> {
        k.mul(self)?.mul(&k.inv()?)
    }

    /// Projection to PSL₂ℝ distance plus displacement difference.
    pub fn distance(&self, o: &Sl2TildeElement) -> (f64, f64) {
        (self.mat.distance(&o.mat), (self.base_disp - o.base_disp).abs())
    }

    /// Lift of a continuous path of SL₂ℝ matrices starting at the identity.
    pub fn lift_path<F: Fn(f64) -> [f64; 4]>(path: F) -> Result<Sl2TildeElement> {
        let end = path(1.0);
        let change = continued_arg_change(
            |s| {
                let m = path(s);
                Complex64::new(m[3], m[2])
            },
            0.0,
            1.0,
        )?;
        let mat = Psl2Element::new(end[0], end[1], end[2], end[3])?;
        Sl2TildeElement::new(mat, -2.0 * change)
    }
}

/// Preferred lift of a hyperbolic or finite-order elliptic element.
///
/// Hyperbolic: the lift of `A^s, s ∈ [0,1]`. Elliptic of order α: the lift of the
/// rotation by `s·2π/α` about the fixed point, which must be the positive direction.
pub fn preferred_lift(a: &Psl2Element, elliptic_order: Option<u32>) -> Result<Sl2TildeElement> {
    match a.classify() {
        MobiusClass::Parabolic => invalid("parabolic elements have no preferred lift"),
        MobiusClass::Hyperbolic => {
            if elliptic_order.is_some() {
                return invalid("elliptic order supplied for a hyperbolic element");
            }
            hyperbolic_lift(a)
        }
        MobiusClass::Elliptic => {
            let alpha = elliptic_order.ok_or_else(|| Error::InvalidInput("elliptic element needs its order".into()))?;
            elliptic_lift(a, alpha)
        }
    }
}

fn hyperbolic_lift(a: &Psl2Element) -> Result<Sl2TildeElement> {
    let sign = if a.trace() < 0.0 { -1.0 } else { 1.0 };
    let [p, q, r, s] = a.entries().map(|x| sign * x);
    let tr = p + s;
    let disc = (tr * tr - 4.0).sqrt();
    let l1 = 0.5 * (tr + disc);
    let l2 = 0.5 * (tr - disc);
    // eigenvectors of [[p,q],[r,s]] for λ: (q, λ−p) or (λ−s, r)
    let eig = |l: f64| -> [f64; 2] {
        let v1 = [q, l - p];
        let v2 = [l - s, r];
        if v1[0].hypot(v1[1]) >= v2[0].hypot(v2[1]) {
            v1
        } else {
            v2
        }
    };
    let e1 = eig(l1);
    let e2 = eig(l2);
    let det = e1[0] * e2[1] - e2[0] * e1[1];
    let (ln1, ln2) = (l1.ln(), l2.ln());
    let path = |t: f64| -> [f64; 4] {
        let (m1, m2) = ((t * ln1).exp(), (t * ln2).exp());
        // P diag(m1, m2) P^{-1}, P = [e1 e2]
        let pinv = [e2[1] / det, -e2[0] / det, -e1[1] / det, e1[0] / det];
        let a00 = e1[0] * m1 * pinv[0] + e2[0] * m2 * pinv[2];
        let a01 = e1[0] * m1 * pinv[1] + e2[0] * m2 * pinv[3];
        let a10 = e1[1] * m1 * pinv[0] + e2[1] * m2 * pinv[2];
        let a11 = e1[1] * m1 * pinv[1] + e2[1] * m2 * pinv[3];
        [a00, a01, a10, a11]
    };
    let lift = Sl2TildeElement::lift_path(path)?;
    if lift.mat.distance(a) > 1e-9 {
        return Err(Error::Verification("eigen-path does not end at the input matrix".into()));
    }
    Ok(Sl2TildeElement { mat: *a, base_disp: lift.base_disp })
}

/// Rotation angle of an elliptic element about its fixed point, in `(0, 2π)`,
/// read off from the derivative `1/(cp+d)²` at the fixed point `p`.
pub fn rotation_angle(a: &Psl2Element) -> Option<f64> {
    let p = a.elliptic_fixed_point()?;
    let w = a.c * p + a.d;
    Some((-2.0 * w.arg()).rem_euclid(TAU))
}

fn elliptic_lift(a: &Psl2Element, alpha: u32) -> Result<Sl2TildeElement> {
    if alpha < 2 {
        return invalid("elliptic order must be at least 2");
    }
    let p = a.elliptic_fixed_point().ok_or_else(|| Error::InvalidInput("no fixed point".into()))?;
    let angle = rotation_angle(a).expect("elliptic");
    let want = TAU / alpha as f64;
    if (angle - want).abs() > 1e-9 {
        return invalid(format!("rotation angle {angle} is not the positive angle 2π/{alpha}"));
    }
    // K maps i to p; the path is K A_{sπ/α} K^{-1}
    let (x, y) = (p.re, p.im);
    let sy = y.sqrt();
    let k = [sy, x / sy, 0.0, 1.0 / sy];
    let kinv = [1.0 / sy, -x / sy, 0.0, sy];
    let path = |s: f64| -> [f64; 4] {
        let t = s * PI / alpha as f64;
        let (sn, cs) = t.sin_cos();
        let r = [cs, sn, -sn, cs];
        let m1 = mul4(&k, &r);
        mul4(&m1, &kinv)
    };
    let lift = Sl2TildeElement::lift_path(path)?;
    if lift.mat.distance(a) > 1e-9 {
        return Err(Error::Verification("rotation path does not end at the input matrix".into()));
    }
    Ok(Sl2TildeElement { mat: *a, base_disp: lift.base_disp })
}

fn mul4(x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}
