use crate::error::{domain, invalid, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One connected piece of a moduli or Teichmüller space of taut contact circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LensComponent {
    /// `{0 < Re a < 1}`, quotiented by `a ~ 1 − a` unless `quotiented` is false.
    Slab { quotiented: bool },
    /// `{n ≥ 1 : n ≡ −1 mod m}`.
    Discrete { modulus: u64 },
}

impl LensComponent {
    pub fn symbol(&self) -> &'static str {
        match self {
            LensComponent::Slab { quotiented: true } => "M1",
            LensComponent::Slab { quotiented: false } => "M1~",
            LensComponent::Discrete { .. } => "M2",
        }
    }

    pub fn description(&self) -> String {
        match self {
            LensComponent::Slab { quotiented: true } => "{a in C : 0 < Re a < 1} / (a ~ 1-a)".into(),
            LensComponent::Slab { quotiented: false } => "{a in C : 0 < Re a < 1}".into(),
            LensComponent::Discrete { modulus } => {
                let first: Vec<String> = (1..).filter(|&n| m2_member(*modulus, n)).take(3).map(|n| n.to_string()).collect();
                format!("{{n >= 1 : n = -1 mod {modulus}}} = {{{}, ...}}", first.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LensModuli {
    pub m: u64,
    pub components: Vec<LensComponent>,
    pub rendered: String,
}

fn render(components: &[LensComponent]) -> String {
    components.iter().map(LensComponent::symbol).collect::<Vec<_>>().join(" + ")
}

fn check_m(m: u64) -> Result<()> {
    if m == 0 {
        return invalid("lens space order m must be at least 1");
    }
    Ok(())
}

/// Moduli space of taut contact circles on `L(m, 1)` (including `S³` for `m = 1`).
pub fn lens_moduli(m: u64) -> Result<LensModuli> {
    check_m(m)?;
    let components = vec![LensComponent::Slab { quotiented: true }, LensComponent::Discrete { modulus: m }];
    Ok(LensModuli { m, rendered: render(&components), components })
}

/// Teichmüller space: two copies of each piece for `m ≤ 2`, otherwise the
/// unquotiented slab and two discrete pieces.
pub fn lens_teichmuller(m: u64) -> Result<LensModuli> {
    check_m(m)?;
    let slab = LensComponent::Slab { quotiented: true };
    let disc = LensComponent::Discrete { modulus: m };
    let components = if m <= 2 {
        vec![slab.clone(), slab, disc.clone(), disc]
    } else {
        vec![LensComponent::Slab { quotiented: false }, disc.clone(), disc]
    };
    Ok(LensModuli { m, rendered: render(&components), components })
}

pub fn m2_member(m: u64, n: u64) -> bool {
    m >= 1 && n >= 1 && (n + 1).is_multiple_of(m)
}

/// The biholomorphism `[a] ↦ a(1 − a)` from the quotiented slab onto `{x + iy : x ≥ y²}`.
pub fn moduli_map_a(a: Complex64) -> Result<Complex64> {
    if !(a.re > 0.0 && a.re < 1.0) || !a.im.is_finite() {
        return domain(format!("a = {a} is outside the slab 0 < Re a < 1"));
    }
    // 1/4 − (a − 1/2)² depends only on ±(a − 1/2)
    let s = a - Complex64::new(0.5, 0.0);
    Ok(Complex64::new(0.25, 0.0) - s * s)
}
