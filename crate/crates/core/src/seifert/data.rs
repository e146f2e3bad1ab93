use crate::algebra::{abelianization, AbelianGroup, IntMatrix};
use crate::error::{invalid, Error, Result};
use crate::rational::{ratio, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Normalized Seifert invariants `{g, b, (α₁,β₁), …, (αₙ,βₙ)}` with `1 ≤ βⱼ < αⱼ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub g: u32,
    pub b: i64,
    pub cones: Vec<(i64, i64)>,
}

impl SeifertData {
    pub fn new(g: u32, b: i64, cones: Vec<(i64, i64)>) -> Result<Self> {
        for &(a, be) in &cones {
            if a < 2 {
                return invalid(format!("cone order {a} must be at least 2"));
            }
            if !(1 <= be && be < a) {
                return invalid(format!("invariant ({a},{be}) is not normalized: need 1 ≤ β < α"));
            }
            if a.gcd(&be) != 1 {
                return invalid(format!("invariant ({a},{be}) is not coprime"));
            }
        }
        Ok(SeifertData { g, b, cones })
    }

    pub fn n(&self) -> usize {
        self.cones.len()
    }

    pub fn alpha_product(&self) -> BigInt {
        self.cones.iter().map(|&(a, _)| BigInt::from(a)).product()
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} b={}", self.g, self.b)?;
        for (a, b) in &self.cones {
            write!(f, " ({a},{b})")?;
        }
        Ok(())
    }
}

/// `χ^orb = 2 − 2g − n + Σ 1/αⱼ`
pub fn chi_orb(s: &SeifertData) -> Rational {
    let mut x = Rational::from_integer(BigInt::from(2 - 2 * s.g as i64 - s.n() as i64));
    for &(a, _) in &s.cones {
        x += ratio(1, a);
    }
    x
}

/// `e = −(b + Σ βⱼ/αⱼ)`
pub fn euler_number(s: &SeifertData) -> Rational {
    let mut x = Rational::from_integer(BigInt::from(s.b));
    for &(a, be) in &s.cones {
        x += ratio(be, a);
    }
    -x
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub chi_negative: bool,
    pub euler_nonzero: bool,
    pub reasons: Vec<String>,
}

/// The geometry is the universal cover of PSL₂ℝ iff `χ^orb < 0` and `e ≠ 0`.
pub fn admits_sl2(s: &SeifertData) -> Admissibility {
    let chi = chi_orb(s);
    let e = euler_number(s);
    let chi_negative = chi.is_negative();
    let euler_nonzero = !e.is_zero();
    let mut reasons = Vec::new();
    if !chi_negative {
        reasons.push(format!("orbifold Euler characteristic {} is not negative", crate::rational::fmt(&chi)));
    }
    if !euler_nonzero {
        reasons.push("Euler number vanishes".to_string());
    }
    Admissibility { admissible: chi_negative && euler_nonzero, chi_negative, euler_nonzero, reasons }
}

/// `r = χ^orb / e`
pub fn fibre_index(s: &SeifertData) -> Result<Rational> {
    let e = euler_number(s);
    if e.is_zero() {
        return Err(Error::Domain("fibre index undefined for e = 0".into()));
    }
    Ok(chi_orb(s) / e)
}

/// Integers with `rβⱼ = αⱼ − 1 + kⱼαⱼ` and `rb = 2g − 2 − Σkⱼ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RvCertificate {
    pub r: i64,
    pub k: Vec<i64>,
}

impl RvCertificate {
    pub fn verify(&self, s: &SeifertData) -> bool {
        let cones_ok = s.cones.iter().zip(&self.k).all(|(&(a, be), &k)| self.r * be == a - 1 + k * a);
        let sum_k: i64 = self.k.iter().sum();
        self.r != 0 && self.k.len() == s.n() && cones_ok && self.r * s.b == 2 * s.g as i64 - 2 - sum_k
    }
}

pub fn raymond_vasquez(s: &SeifertData) -> Option<RvCertificate> {
    let r = fibre_index(s).ok()?;
    if !r.is_integer() || r.is_zero() {
        return None;
    }
    let r = r.to_integer().to_i64()?;
    let mut k = Vec::with_capacity(s.n());
    for &(a, be) in &s.cones {
        let num = r * be - a + 1;
        if num % a != 0 {
            return None;
        }
        k.push(num / a);
    }
    let cert = RvCertificate { r, k };
    cert.verify(s).then_some(cert)
}

/// The `(n+1)×(n+1)` matrix with diagonal `αⱼ`, last column `βⱼ` and last row `1, …, 1, −b`.
pub fn matrix_c(s: &SeifertData) -> IntMatrix {
    let n = s.n();
    let mut c = IntMatrix::zeros(n + 1, n + 1);
    for (j, &(a, be)) in s.cones.iter().enumerate() {
        c.set(j, j, BigInt::from(a));
        c.set(j, n, BigInt::from(be));
        c.set(n, j, BigInt::one());
    }
    c.set(n, n, BigInt::from(-s.b));
    c
}

pub fn det_c(s: &SeifertData) -> BigInt {
    matrix_c(s).determinant()
}

/// A word is a list of `(generator index, exponent)`.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub central: Option<usize>,
}

impl Presentation {
    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let k = self.generators.len();
        let mut m = IntMatrix::zeros(self.relators.len(), k);
        for (i, w) in self.relators.iter().enumerate() {
            for &(g, e) in w {
                let v = m.get(i, g) + BigInt::from(e);
                m.set(i, g, v);
            }
        }
        m
    }

    pub fn abelianization(&self) -> AbelianGroup {
        abelianization(&self.relation_matrix(), self.generators.len())
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&(g, e)| if e == 1 { self.generators[g].clone() } else { format!("{}^{}", self.generators[g], e) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn commutator_word(a: usize, b: usize) -> Word {
    vec![(a, 1), (b, 1), (a, -1), (b, -1)]
}

fn surface_generators(s: &SeifertData) -> Vec<String> {
    let mut names = Vec::new();
    for i in 1..=s.g {
        names.push(format!("u{i}"));
        names.push(format!("v{i}"));
    }
    for j in 1..=s.n() {
        names.push(format!("q{j}"));
    }
    names
}

/// `⟨uᵢ, vᵢ, qⱼ, h | ∏[uᵢ,vᵢ] ∏qⱼ = h^b, qⱼ^{αⱼ} h^{βⱼ} = 1, h central⟩`
pub fn pi1_presentation(s: &SeifertData) -> Presentation {
    let mut generators = surface_generators(s);
    let h = generators.len();
    generators.push("h".into());
    let q0 = 2 * s.g as usize;
    let mut long: Word = Vec::new();
    for i in 0..s.g as usize {
        long.extend(commutator_word(2 * i, 2 * i + 1));
    }
    for j in 0..s.n() {
        long.push((q0 + j, 1));
    }
    long.push((h, -s.b));
    let mut relators = vec![long];
    for (j, &(a, be)) in s.cones.iter().enumerate() {
        relators.push(vec![(q0 + j, a), (h, be)]);
    }
    for x in 0..h {
        relators.push(commutator_word(h, x));
    }
    Presentation { generators, relators, central: Some(h) }
}

/// `⟨ūᵢ, v̄ᵢ, q̄ⱼ | ∏[ūᵢ,v̄ᵢ] ∏q̄ⱼ = 1, q̄ⱼ^{αⱼ} = 1⟩`
pub fn orb_presentation(s: &SeifertData) -> Presentation {
    let generators = surface_generators(s);
    let q0 = 2 * s.g as usize;
    let mut long: Word = Vec::new();
    for i in 0..s.g as usize {
        long.extend(commutator_word(2 * i, 2 * i + 1));
    }
    for j in 0..s.n() {
        long.push((q0 + j, 1));
    }
    let mut relators = vec![long];
    for (j, &(a, _)) in s.cones.iter().enumerate() {
        relators.push(vec![(q0 + j, a)]);
    }
    Presentation { generators, relators, central: None }
}

pub fn h1(s: &SeifertData) -> AbelianGroup {
    pi1_presentation(s).abelianization()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeichmullerDescriptor {
    pub base_dimension: i64,
    pub base_components: u32,
    pub fibre_rank: u32,
    pub r: i64,
    /// Decimal rendering of `|r|^{2g}`.
    pub covering_degree: String,
    pub branched: bool,
    /// Components of the moduli space when there are no cone points.
    pub moduli_components: Option<u32>,
    pub notes: Vec<String>,
}

/// Shape of the Teichmüller and moduli spaces of a left quotient of the universal
/// cover of PSL₂ℝ.
pub fn teichmuller_descriptor(s: &SeifertData) -> Result<TeichmullerDescriptor> {
    let adm = admits_sl2(s);
    if !adm.admissible {
        return invalid(format!("Seifert data not admissible: {}", adm.reasons.join("; ")));
    }
    let cert = raymond_vasquez(s).ok_or_else(|| Error::InvalidInput("no Raymond–Vasquez certificate".into()))?;
    let degree = BigInt::from(cert.r.abs()).pow(2 * s.g);
    let mut notes = vec![
        "Teichmüller space is a trivial principal Z^{2g}-bundle over the orbifold Teichmüller space".to_string(),
        "sign of r depends on the orientation convention".to_string(),
    ];
    let moduli_components = if s.n() == 0 {
        let c = if cert.r % 2 == 0 { 2 } else { 1 };
        notes.push(if c == 1 { "moduli space connected".into() } else { "moduli space has two components".into() });
        Some(c)
    } else {
        None
    };
    Ok(TeichmullerDescriptor {
        base_dimension: 6 * s.g as i64 - 6 + 2 * s.n() as i64,
        base_components: 2,
        fibre_rank: 2 * s.g,
        r: cert.r,
        covering_degree: degree.to_string(),
        branched: !degree.is_one(),
        moduli_components,
        notes,
    })
}
