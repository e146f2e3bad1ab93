use crate::rational::Rational;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::TAU;

/// The cyclotomic field ℚ(ζ_N), elements stored in the power basis `1, ζ, …, ζ^{φ(N)−1}`
/// reduced modulo the N-th cyclotomic polynomial, so equal numbers have equal coefficients.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    pub n: u32,
    /// Monic Φ_N, lowest degree first.
    phi: Vec<i64>,
    /// `powers[m]` = ζ^m reduced, for `0 ≤ m < N`.
    powers: Vec<Cyc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyc(pub Vec<Rational>);

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut q = vec![0i64; r.len() - dn];
    for k in (0..q.len()).rev() {
        let c = r[k + dn] / lead;
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            r[k + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n − 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CyclotomicField {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1);
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut f = CyclotomicField { n, phi, powers: Vec::new() };
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = f.one();
        for _ in 0..n {
            powers.push(cur.clone());
            cur = f.reduce(shift_up(&cur.0));
        }
        debug_assert_eq!(powers[0].0.len(), deg);
        f.powers = powers;
        f
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![Rational::zero(); self.degree()])
    }

    pub fn one(&self) -> Cyc {
        self.rational(Rational::one())
    }

    pub fn rational(&self, q: Rational) -> Cyc {
        let mut v = vec![Rational::zero(); self.degree()];
        v[0] = q;
        Cyc(v)
    }

    pub fn int(&self, k: i64) -> Cyc {
        self.rational(Rational::from_integer(BigInt::from(k)))
    }

    /// ζ_N^k
    pub fn zeta_pow(&self, k: i64) -> Cyc {
        self.powers[k.rem_euclid(self.n as i64) as usize].clone()
    }

    /// ζ_m^k for `m | N`.
    pub fn root_of_unity(&self, m: u32, k: i64) -> Cyc {
        assert!(self.n.is_multiple_of(m), "ζ_{m} is not in ℚ(ζ_{})", self.n);
        self.zeta_pow(k * (self.n / m) as i64)
    }

    /// The imaginary unit; needs `4 | N`.
    pub fn i(&self) -> Cyc {
        self.root_of_unity(4, 1)
    }

    /// cos(2πk/m) = (ζ_m^k + ζ_m^{−k})/2
    pub fn cos_2pi(&self, k: i64, m: u32) -> Cyc {
        let s = self.add(&self.root_of_unity(m, k), &self.root_of_unity(m, -k));
        self.scale(&s, &Rational::new(BigInt::one(), BigInt::from(2)))
    }

    /// sin(2πk/m) = (ζ_m^k − ζ_m^{−k})/(2i); needs `4 | N`.
    pub fn sin_2pi(&self, k: i64, m: u32) -> Cyc {
        let d = self.sub(&self.root_of_unity(m, k), &self.root_of_unity(m, -k));
        let minus_half_i = self.scale(&self.i(), &Rational::new(BigInt::from(-1), BigInt::from(2)));
        self.mul(&d, &minus_half_i)
    }

    /// √2 = ζ_8 + ζ_8^{−1}; needs `8 | N`.
    pub fn sqrt2(&self) -> Cyc {
        self.add(&self.root_of_unity(8, 1), &self.root_of_unity(8, -1))
    }

    /// √5 = 1 + 2(ζ_5 + ζ_5^{−1}); needs `5 | N`.
    pub fn sqrt5(&self) -> Cyc {
        let s = self.add(&self.root_of_unity(5, 1), &self.root_of_unity(5, -1));
        self.add(&self.one(), &self.scale(&s, &Rational::from_integer(BigInt::from(2))))
    }

    fn reduce(&self, mut c: Vec<Rational>) -> Cyc {
        let deg = self.degree();
        while c.len() > deg {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = c.len() - deg;
            for (j, &p) in self.phi[..deg].iter().enumerate() {
                if p != 0 {
                    c[base + j] -= &top * Rational::from_integer(BigInt::from(p));
                }
            }
        }
        c.resize(deg, Rational::zero());
        Cyc(c)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Cyc, q: &Rational) -> Cyc {
        Cyc(a.0.iter().map(|x| x * q).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let deg = self.degree();
        let mut c = vec![Rational::zero(); 2 * deg - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        self.reduce(c)
    }

    /// Complex conjugation ζ ↦ ζ^{−1}.
    pub fn conj(&self, a: &Cyc) -> Cyc {
        let mut out = self.zero();
        for (k, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            out = self.add(&out, &self.scale(&self.zeta_pow(-(k as i64)), x));
        }
        out
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    /// Value under the embedding ζ ↦ exp(2πi/N).
    pub fn to_complex(&self, a: &Cyc) -> Complex64 {
        a.0.iter()
            .enumerate()
            .map(|(k, x)| Complex64::from_polar(1.0, TAU * k as f64 / self.n as f64) * x.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Label with a common denominator, e.g. `(1 - 2ζ^3)/2`.
    pub fn render(&self, a: &Cyc) -> String {
        let den = a.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| {
                let c = (x * Rational::from_integer(den.clone())).to_integer();
                match k {
                    0 => c.to_string(),
                    1 => format!("{c}z"),
                    _ => format!("{c}z^{k}"),
                }
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join("+").replace("+-", "-") };
        if den.is_one() {
            body
        } else {
            format!("({body})/{den}")
        }
    }
}

fn shift_up(c: &[Rational]) -> Vec<Rational> {
    let mut v = Vec::with_capacity(c.len() + 1);
    v.push(Rational::zero());
    v.extend_from_slice(c);
    v
}

/// Quaternion `A + B j` with `A, B ∈ ℚ(ζ_N)`; as an SU(2) matrix `[[A, B], [−B̄, Ā]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactQuat {
    pub a: Cyc,
    pub b: Cyc,
}

impl CyclotomicField {
    pub fn quat(&self, a: Cyc, b: Cyc) -> ExactQuat {
        ExactQuat { a, b }
    }

    pub fn quat_one(&self) -> ExactQuat {
        ExactQuat { a: self.one(), b: self.zero() }
    }

    /// `a0 + i a1 + j b0 + k b1` from field elements (which should be real).
    pub fn quat_from_parts(&self, a0: &Cyc, a1: &Cyc, b0: &Cyc, b1: &Cyc) -> ExactQuat {
        let i = self.i();
        ExactQuat { a: self.add(a0, &self.mul(&i, a1)), b: self.add(b0, &self.mul(&i, b1)) }
    }

    /// `(A + Bj)(C + Dj) = (AC − B D̄) + (AD + B C̄) j`
    pub fn quat_mul(&self, p: &ExactQuat, q: &ExactQuat) -> ExactQuat {
        let a = self.sub(&self.mul(&p.a, &q.a), &self.mul(&p.b, &self.conj(&q.b)));
        let b = self.add(&self.mul(&p.a, &q.b), &self.mul(&p.b, &self.conj(&q.a)));
        ExactQuat { a, b }
    }

    pub fn quat_conj(&self, q: &ExactQuat) -> ExactQuat {
        ExactQuat { a: self.conj(&q.a), b: self.neg(&q.b) }
    }

    pub fn norm_sqr(&self, q: &ExactQuat) -> Cyc {
        self.add(&self.mul(&q.a, &self.conj(&q.a)), &self.mul(&q.b, &self.conj(&q.b)))
    }

    pub fn to_unit_quaternion(&self, q: &ExactQuat) -> crate::lie::UnitQuaternion {
        let a = self.to_complex(&q.a);
        let b = self.to_complex(&q.b);
        crate::lie::UnitQuaternion::new(a.re, a.im, b.re, b.im)
    }
}
