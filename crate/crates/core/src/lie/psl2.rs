use crate::error::{invalid, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO_THRESHOLD: f64 = 1e-12;
const CLASS_TOL: f64 = 1e-9;

/// Element of PSL₂ℝ stored as a sign-canonical representative of SL₂ℝ:
/// the first entry of `(a, b, c, d)` with `|x| > 1e-12` is positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Psl2Element {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MobiusClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl Psl2Element {
    pub const IDENTITY: Psl2Element = Psl2Element { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Checks `ad - bc = 1` to 1e-9 and canonicalizes the sign.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || (det - 1.0).abs() > 1e-9 {
            return invalid(format!("determinant {det} is not 1"));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    /// Rescales an invertible matrix with positive determinant into SL₂ℝ.
    pub fn from_gl(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) {
            return invalid(format!("determinant {det} is not positive"));
        }
        let s = det.sqrt();
        Ok(Self::canonical(a / s, b / s, c / s, d / s))
    }

    fn canonical(a: f64, b: f64, c: f64, d: f64) -> Self {
        let lead = [a, b, c, d].into_iter().find(|x| x.abs() > ZERO_THRESHOLD).unwrap_or(1.0);
        if lead < 0.0 {
            Psl2Element { a: -a, b: -b, c: -c, d: -d }
        } else {
            Psl2Element { a, b, c, d }
        }
    }

    /// Rotation `[[cos t, sin t], [-sin t, cos t]]` about `i` by angle `2t`.
    pub fn rotation(t: f64) -> Self {
        let (s, c) = t.sin_cos();
        Self::canonical(c, s, -s, c)
    }

    pub fn diag(l: f64) -> Self {
        Self::canonical(l, 0.0, 0.0, 1.0 / l)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn mul(&self, o: &Psl2Element) -> Psl2Element {
        Self::canonical(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn inv(&self) -> Psl2Element {
        Self::canonical(self.d, -self.b, -self.c, self.a)
    }

    pub fn classify(&self) -> MobiusClass {
        let t = self.trace().abs();
        if (t - 2.0).abs() <= CLASS_TOL {
            MobiusClass::Parabolic
        } else if t < 2.0 {
            MobiusClass::Elliptic
        } else {
            MobiusClass::Hyperbolic
        }
    }

    /// Distance in PSL₂ℝ: entrywise max over both sign representatives.
    pub fn distance(&self, o: &Psl2Element) -> f64 {
        let plus = self.entries().iter().zip(o.entries()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let minus = self.entries().iter().zip(o.entries()).map(|(x, y)| (x + y).abs()).fold(0.0, f64::max);
        plus.min(minus)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.distance(&Psl2Element::IDENTITY) < tol
    }

    pub fn conjugate_by(&self, k: &Psl2Element) -> Psl2Element {
        k.mul(self).mul(&k.inv())
    }

    /// Fixed point in the upper half-plane of an elliptic element.
    pub fn elliptic_fixed_point(&self) -> Option<Complex64> {
        if self.classify() != MobiusClass::Elliptic || self.c.abs() < ZERO_THRESHOLD {
            return None;
        }
        // c z² + (d − a) z − b = 0
        let disc = Complex64::new((self.d - self.a).powi(2) + 4.0 * self.b * self.c, 0.0).sqrt();
        let base = Complex64::new(self.a - self.d, 0.0);
        let z1 = (base + disc) / (2.0 * self.c);
        let z2 = (base - disc) / (2.0 * self.c);
        Some(if z1.im > 0.0 { z1 } else { z2 })
    }
}

/// Möbius action `(az + b) / (cz + d)` on the upper half-plane.
pub fn mobius_act(m: &Psl2Element, z: Complex64) -> Complex64 {
    (m.a * z + m.b) / (m.c * z + m.d)
}
