use crate::error::{domain, invalid, Result};
use nalgebra::{Matrix3, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Boundary and lattice-membership tolerance for floating-point τ and z.
pub const TOL: f64 = 1e-9;

/// Representation of Z³ in the translations `C × 2πZ` of the universal cover of E₂:
/// `ρ(eᵢ) = (vᵢ, 2π rᵢ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Z3Rep {
    pub v: [Complex64; 3],
    pub r: [i64; 3],
}

/// `ρ(e₁) = (τ, 0)`, `ρ(e₂) = (1, 0)`, `ρ(e₃) = (z, 2πr)` with `Im τ > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardFormRep {
    pub r: i64,
    pub tau: Complex64,
    pub z: Complex64,
}

impl StandardFormRep {
    pub fn new(r: i64, tau: Complex64, z: Complex64) -> Result<Self> {
        if r < 1 {
            return invalid(format!("r = {r} must be positive"));
        }
        if !(tau.im > 0.0) {
            return domain(format!("Im τ = {} must be positive", tau.im));
        }
        Ok(StandardFormRep { r, tau, z: reduce_mod_lattice(z, tau) })
    }

    pub fn as_rep(&self) -> Z3Rep {
        Z3Rep { v: [self.tau, Complex64::new(1.0, 0.0), self.z], r: [0, 0, self.r] }
    }
}

fn rank_matrix(rep: &Z3Rep) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| match j {
        0 => rep.v[i].re,
        1 => rep.v[i].im,
        _ => rep.r[i] as f64,
    })
}

/// Faithful with discrete image iff the triples `(Re vᵢ, Im vᵢ, rᵢ)` span R³.
pub fn is_valid_t3_rep(rep: &Z3Rep) -> bool {
    let m = rank_matrix(rep);
    if !m.iter().all(|x| x.is_finite()) {
        return false;
    }
    let sv = m.singular_values();
    sv.min() > TOL
}

/// Unimodular `U` with `r·U = (0, 0, g)`, `g = gcd(r) ≥ 0`, built from column operations.
pub fn gcd_unimodular(r: [i64; 3]) -> ([[i64; 3]; 3], i64) {
    let mut row = r;
    let mut u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let col_add = |u: &mut [[i64; 3]; 3], dst: usize, src: usize, q: i64| {
        for row in u.iter_mut() {
            row[dst] += q * row[src];
        }
    };
    loop {
        let nz: Vec<usize> = (0..3).filter(|&i| row[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| (row[i].abs(), i)).expect("non-empty");
        for &q in &nz {
            if q != p {
                let k = row[q].div_euclid(row[p]);
                row[q] -= k * row[p];
                col_add(&mut u, q, p, -k);
            }
        }
    }
    if let Some(p) = (0..3).find(|&i| row[i] != 0) {
        if p != 2 {
            row.swap(p, 2);
            for rw in u.iter_mut() {
                rw.swap(p, 2);
            }
        }
        if row[2] < 0 {
            row[2] = -row[2];
            for rw in u.iter_mut() {
                rw[2] = -rw[2];
            }
        }
    }
    (u, row[2])
}

fn apply_basis(rep: &Z3Rep, u: &[[i64; 3]; 3]) -> Z3Rep {
    let mut v = [Complex64::new(0.0, 0.0); 3];
    let mut r = [0i64; 3];
    for j in 0..3 {
        for i in 0..3 {
            v[j] += rep.v[i] * u[i][j] as f64;
            r[j] += rep.r[i] * u[i][j];
        }
    }
    Z3Rep { v, r }
}

/// Precomposition with the basis change `aⱼ = Σᵢ Uᵢⱼ eᵢ`.
pub fn change_basis(rep: &Z3Rep, u: &[[i64; 3]; 3]) -> Z3Rep {
    apply_basis(rep, u)
}

/// Random product of elementary column operations, swaps and sign flips.
pub fn random_unimodular<R: rand::Rng>(rng: &mut R) -> [[i64; 3]; 3] {
    let mut u = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..rng.gen_range(3..9) {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        match rng.gen_range(0..3) {
            0 => {
                let k = rng.gen_range(-3..=3);
                for row in u.iter_mut() {
                    row[j] += k * row[i];
                }
            }
            1 => {
                for row in u.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for row in u.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    u
}

/// Lattice coordinates `(a, b)` of `w = a + bτ`.
pub fn lattice_coords(w: Complex64, tau: Complex64) -> (f64, f64) {
    let b = w.im / tau.im;
    (w.re - b * tau.re, b)
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if !(TOL..=1.0 - TOL).contains(&f) {
        0.0
    } else {
        f
    }
}

/// Representative of `z` in `[0,1) + [0,1)τ`.
pub fn reduce_mod_lattice(z: Complex64, tau: Complex64) -> Complex64 {
    let (a, b) = lattice_coords(z, tau);
    Complex64::new(frac(a), 0.0) + tau * frac(b)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardFormResult {
    pub standard: StandardFormRep,
    /// New basis `aⱼ = Σᵢ Uᵢⱼ eᵢ`.
    pub unimodular: [[i64; 3]; 3],
    /// `ρ(aⱼ)` translations are `scale⁻¹ · (τ, 1, z)`.
    pub scale: Complex64,
}

/// Basis change and complex scale putting a valid representation in standard form.
pub fn to_standard_form(rep: &Z3Rep) -> Result<StandardFormResult> {
    if !is_valid_t3_rep(rep) {
        return invalid("representation is not faithful with discrete image (rank < 3)");
    }
    let (mut u, g) = gcd_unimodular(rep.r);
    let mut w = apply_basis(rep, &u);
    if (w.v[0] / w.v[1]).im < 0.0 {
        for row in u.iter_mut() {
            row.swap(0, 1);
        }
        w = apply_basis(rep, &u);
    }
    let scale = Complex64::new(1.0, 0.0) / w.v[1];
    let tau = w.v[0] * scale;
    let z = w.v[2] * scale;
    // a₃ ↦ a₃ − m a₁ − n a₂ moves z into the fundamental parallelogram
    let (ca, cb) = lattice_coords(z, tau);
    let (n, m) = (floor_tol(ca), floor_tol(cb));
    for row in u.iter_mut() {
        row[2] -= m * row[0] + n * row[1];
    }
    let z = z - tau * m as f64 - Complex64::new(n as f64, 0.0);
    Ok(StandardFormResult { standard: StandardFormRep { r: g, tau, z: reduce_mod_lattice(z, tau) }, unimodular: u, scale })
}

fn floor_tol(x: f64) -> i64 {
    let f = x.floor();
    if x - f > 1.0 - TOL {
        f as i64 + 1
    } else {
        f as i64
    }
}

/// Element `[[a, b], [c, d]]` of SL₂Z.
pub type Sl2z = [[i64; 2]; 2];

pub fn sl2z_mul(x: &Sl2z, y: &Sl2z) -> Sl2z {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

pub fn sl2z_act(m: &Sl2z, tau: Complex64) -> Complex64 {
    let f = |x: i64| x as f64;
    (tau * f(m[0][0]) + f(m[0][1])) / (tau * f(m[1][0]) + f(m[1][1]))
}

/// `(τ, z) ↦ ((aτ+b)/(cτ+d), z/(cτ+d))` without reducing z.
pub fn diagonal_action(m: &Sl2z, tau: Complex64, z: Complex64) -> (Complex64, Complex64) {
    let j = tau * m[1][0] as f64 + m[1][1] as f64;
    (sl2z_act(m, tau), z / j)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2zReduction {
    pub tau: Complex64,
    pub z: Complex64,
    pub matrix: Sl2z,
}

fn lex_less(x: (f64, f64), y: (f64, f64)) -> bool {
    if x.0 < y.0 - TOL {
        return true;
    }
    if (x.0 - y.0).abs() <= TOL {
        return x.1 < y.1 - TOL;
    }
    false
}

/// Moves τ into `|Re τ| ≤ 1/2, |τ| ≥ 1` (boundary ties resolved to `Re τ ≥ 0`) and z
/// along with it, then picks among the stabilizer images of z the one with
/// lexicographically smallest lattice coordinates in `[0,1)²`.
pub fn sl2z_reduce(tau: Complex64, z: Complex64) -> Result<Sl2zReduction> {
    if !(tau.im > 0.0) || !tau.re.is_finite() || !z.re.is_finite() || !z.im.is_finite() {
        return domain("sl2z_reduce needs Im τ > 0 and finite inputs");
    }
    let t_pow = |n: i64| -> Sl2z { [[1, n], [0, 1]] };
    let s: Sl2z = [[0, -1], [1, 0]];
    let mut m: Sl2z = [[1, 0], [0, 1]];
    let mut t = tau;
    for _ in 0..10_000 {
        let n = (t.re + 0.5).floor() as i64;
        if n != 0 {
            m = sl2z_mul(&t_pow(-n), &m);
            t = sl2z_act(&m, tau);
        }
        if t.norm() < 1.0 - TOL {
            m = sl2z_mul(&s, &m);
            t = sl2z_act(&m, tau);
        } else {
            break;
        }
    }
    if t.norm() < 1.0 + TOL && t.re < -TOL {
        m = sl2z_mul(&s, &m);
        t = sl2z_act(&m, tau);
    }
    if (t.re + 0.5).abs() <= TOL {
        m = sl2z_mul(&t_pow(1), &m);
        t = sl2z_act(&m, tau);
    }
    let (_, zr) = diagonal_action(&m, tau, z);
    let zr = reduce_mod_lattice(zr, t);

    let mut best = (m, reduce_mod_lattice(zr, t));
    let mut best_key = lattice_coords(best.1, t);
    for g in stabilizer(t) {
        let (_, zg) = diagonal_action(&g, t, zr);
        let zg = reduce_mod_lattice(zg, t);
        let key = lattice_coords(zg, t);
        if lex_less(key, best_key) {
            best = (sl2z_mul(&g, &m), zg);
            best_key = key;
        }
    }
    Ok(Sl2zReduction { tau: t, z: best.1, matrix: best.0 })
}

/// Elements of SL₂Z with entries in {−1, 0, 1} fixing τ; for τ in the fundamental
/// domain this is the whole stabilizer.
pub fn stabilizer(tau: Complex64) -> Vec<Sl2z> {
    let mut out = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                for d in -1..=1 {
                    if a * d - b * c == 1 {
                        let g = [[a, b], [c, d]];
                        if (sl2z_act(&g, tau) - tau).norm() < TOL {
                            out.push(g);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Standard form followed by SL₂Z reduction.
pub fn canonical_form(rep: &Z3Rep) -> Result<StandardFormRep> {
    let sf = to_standard_form(rep)?.standard;
    let red = sl2z_reduce(sf.tau, sf.z)?;
    Ok(StandardFormRep { r: sf.r, tau: red.tau, z: red.z })
}

/// Four vectors of C² spanning the lattice of the universal family over standard forms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice4 {
    pub vectors: [[Complex64; 2]; 4],
    pub real_det: f64,
}

pub fn universal_lattice(sf: &StandardFormRep) -> Result<Lattice4> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let vectors = [
        [sf.tau, zero],
        [one, zero],
        [sf.z, Complex64::new(0.0, TAU * sf.r as f64)],
        [zero, one],
    ];
    let m = Matrix4::from_fn(|i, j| {
        let c = vectors[i][j / 2];
        if j % 2 == 0 {
            c.re
        } else {
            c.im
        }
    });
    let real_det = m.determinant();
    if real_det.abs() < TOL {
        return domain("lattice vectors are not of real rank 4");
    }
    Ok(Lattice4 { vectors, real_det })
}

/// A unit `μ` with `μ⟨1,τ⟩ = ⟨1,τ⟩` and `μz ≡ z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Symmetry {
    pub mu: Complex64,
    pub order: u32,
}

fn in_lattice(w: Complex64, tau: Complex64) -> bool {
    let (a, b) = lattice_coords(w, tau);
    (a - a.round()).abs() < TOL && (b - b.round()).abs() < TOL
}

/// All nontrivial roots of unity of order 2, 3, 4, 6 acting as symmetries of `(C/⟨1,τ⟩, z)`.
pub fn symmetry_points(tau: Complex64, z: Complex64) -> Result<Vec<Symmetry>> {
    if !(tau.im > 0.0) {
        return domain("symmetry_points needs Im τ > 0");
    }
    let candidates: [(f64, u32); 7] = [
        (PI, 2),
        (TAU / 3.0, 3),
        (2.0 * TAU / 3.0, 3),
        (PI / 2.0, 4),
        (3.0 * PI / 2.0, 4),
        (PI / 3.0, 6),
        (5.0 * PI / 3.0, 6),
    ];
    Ok(candidates
        .iter()
        .map(|&(ang, order)| Symmetry { mu: Complex64::from_polar(1.0, ang), order })
        .filter(|s| {
            in_lattice(s.mu, tau) && in_lattice(s.mu * tau, tau) && in_lattice(s.mu * z - z, tau)
        })
        .collect())
}
