use crate::error::{domain, Result};
use serde::{Deserialize, Serialize};

/// Element of the universal cover of the Euclidean motion group, `R^2 ⋊ R`.
///
/// The rotational part `theta` is kept unreduced: `theta + 2π` is a different element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EuclideanMotion {
    pub tx: f64,
    pub ty: f64,
    pub theta: f64,
}

impl EuclideanMotion {
    pub const IDENTITY: EuclideanMotion = EuclideanMotion { tx: 0.0, ty: 0.0, theta: 0.0 };

    pub fn new(tx: f64, ty: f64, theta: f64) -> Self {
        EuclideanMotion { tx, ty, theta }
    }

    pub fn translation(&self) -> (f64, f64) {
        (self.tx, self.ty)
    }

    /// Action on `(x, y, θ)` by left multiplication.
    pub fn act(&self, p: [f64; 3]) -> [f64; 3] {
        let g = e2_mul(self, &EuclideanMotion::new(p[0], p[1], p[2]));
        [g.tx, g.ty, g.theta]
    }

    pub fn distance(&self, other: &EuclideanMotion) -> f64 {
        (self.tx - other.tx).abs().max((self.ty - other.ty).abs()).max((self.theta - other.theta).abs())
    }
}

/// `((x0,y0),θ0)·((x,y),θ) = (R(θ0)(x,y) + (x0,y0), θ0 + θ)`.
pub fn e2_mul(g: &EuclideanMotion, h: &EuclideanMotion) -> EuclideanMotion {
    let (s, c) = g.theta.sin_cos();
    EuclideanMotion {
        tx: c * h.tx - s * h.ty + g.tx,
        ty: s * h.tx + c * h.ty + g.ty,
        theta: g.theta + h.theta,
    }
}

pub fn e2_inv(g: &EuclideanMotion) -> EuclideanMotion {
    let (s, c) = g.theta.sin_cos();
    EuclideanMotion {
        tx: -(c * g.tx + s * g.ty),
        ty: -(-s * g.tx + c * g.ty),
        theta: -g.theta,
    }
}

/// The scaling automorphism `s_c`: translations scale by `c`, rotations are kept.
pub fn e2_scale(c: f64, g: &EuclideanMotion) -> Result<EuclideanMotion> {
    if !(c > 0.0) {
        return domain(format!("scale factor must be positive, got {c}"));
    }
    Ok(EuclideanMotion { tx: c * g.tx, ty: c * g.ty, theta: g.theta })
}
