use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Quaternion `a0 + i a1 + j b0 + k b1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitQuaternion {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
}

pub type Su2Matrix = [[Complex64; 2]; 2];

impl UnitQuaternion {
    pub const ONE: UnitQuaternion = UnitQuaternion { a0: 1.0, a1: 0.0, b0: 0.0, b1: 0.0 };
    pub const I: UnitQuaternion = UnitQuaternion { a0: 0.0, a1: 1.0, b0: 0.0, b1: 0.0 };
    pub const J: UnitQuaternion = UnitQuaternion { a0: 0.0, a1: 0.0, b0: 1.0, b1: 0.0 };
    pub const K: UnitQuaternion = UnitQuaternion { a0: 0.0, a1: 0.0, b0: 0.0, b1: 1.0 };

    pub fn new(a0: f64, a1: f64, b0: f64, b1: f64) -> Self {
        UnitQuaternion { a0, a1, b0, b1 }
    }

    pub fn normalized(a0: f64, a1: f64, b0: f64, b1: f64) -> Self {
        let n = (a0 * a0 + a1 * a1 + b0 * b0 + b1 * b1).sqrt();
        UnitQuaternion::new(a0 / n, a1 / n, b0 / n, b1 / n)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.b0 * self.b0 + self.b1 * self.b1
    }

    pub fn is_unit(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() < 1e-12
    }

    pub fn distance(&self, o: &UnitQuaternion) -> f64 {
        (self.a0 - o.a0)
            .abs()
            .max((self.a1 - o.a1).abs())
            .max((self.b0 - o.b0).abs())
            .max((self.b1 - o.b1).abs())
    }

    pub fn neg(&self) -> Self {
        UnitQuaternion::new(-self.a0, -self.a1, -self.b0, -self.b1)
    }
}

/// Hamilton product.
pub fn quat_mul(p: &UnitQuaternion, q: &UnitQuaternion) -> UnitQuaternion {
    let (w1, x1, y1, z1) = (p.a0, p.a1, p.b0, p.b1);
    let (w2, x2, y2, z2) = (q.a0, q.a1, q.b0, q.b1);
    UnitQuaternion {
        a0: w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        a1: w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        b0: w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        b1: w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    }
}

pub fn quat_conj(q: &UnitQuaternion) -> UnitQuaternion {
    UnitQuaternion::new(q.a0, -q.a1, -q.b0, -q.b1)
}

/// `a0 + i a1 + j b0 + k b1 ↦ [[a0 + i a1, b0 + i b1], [-b0 + i b1, a0 - i a1]]`.
pub fn quat_to_su2(q: &UnitQuaternion) -> Su2Matrix {
    [
        [Complex64::new(q.a0, q.a1), Complex64::new(q.b0, q.b1)],
        [Complex64::new(-q.b0, q.b1), Complex64::new(q.a0, -q.a1)],
    ]
}

pub fn mat2_mul(a: &Su2Matrix, b: &Su2Matrix) -> Su2Matrix {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_det(a: &Su2Matrix) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn mat2_distance(a: &Su2Matrix, b: &Su2Matrix) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}
