use super::octagon::FuchsianGenus2;
use crate::error::{Error, Result};
use crate::lie::{preferred_lift, Sl2TildeElement};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Lifts of the generators `u₁, v₁, …, u_g, v_g` and the central value of `h`.
#[derive(Clone, Debug)]
pub struct LiftAssignment {
    pub lifts: Vec<Sl2TildeElement>,
    /// `ρ(h) = (identity, 2π r)`
    pub r: i64,
}

impl LiftAssignment {
    /// Preferred lifts of every generator (the representation ρ₀).
    pub fn preferred(grp: &FuchsianGenus2, r: i64) -> Result<Self> {
        let lifts = grp.generators.iter().map(|g| preferred_lift(g, None)).collect::<Result<Vec<_>>>()?;
        Ok(LiftAssignment { lifts, r })
    }

    pub fn h(&self) -> Sl2TildeElement {
        Sl2TildeElement::central(self.r as f64)
    }

    /// `∏ᵢ[ρ(uᵢ), ρ(vᵢ)]` evaluated left to right.
    pub fn commutator_product(&self) -> Result<Sl2TildeElement> {
        let mut acc = Sl2TildeElement::IDENTITY;
        for pair in self.lifts.chunks(2) {
            acc = acc.mul(&pair[0].commutator(&pair[1])?)?;
        }
        Ok(acc)
    }

    /// Integer offsets `w` of each lift relative to `base`.
    pub fn offsets_from(&self, base: &LiftAssignment) -> Vec<i64> {
        self.lifts
            .iter()
            .zip(&base.lifts)
            .map(|(l, b)| ((l.base_disp - b.base_disp) / TAU).round() as i64)
            .collect()
    }
}

/// Outcome of testing `∏[ρ₀(ūᵢ), ρ₀(v̄ᵢ)]` against a central shift.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShiftCheck {
    pub chi_orb: i64,
    pub shift: f64,
    pub shift_over_2pi: f64,
    pub expected_shift: f64,
    pub matrix_residual: f64,
    pub displacement_residual: f64,
    pub action_residual: f64,
}

impl ShiftCheck {
    pub fn passes(&self, matrix_tol: f64, disp_tol: f64) -> bool {
        self.matrix_residual < matrix_tol && self.displacement_residual < disp_tol && self.action_residual < disp_tol
    }
}

fn sample_points() -> Vec<(Complex64, f64)> {
    // fixed spread of base points and fibre coordinates
    (0..10)
        .map(|k| {
            let t = k as f64;
            (Complex64::new((0.7 * t).sin() * 2.0, 0.3 + 0.4 * t), -3.0 + 0.9 * t)
        })
        .collect()
}

/// Compares the commutator product with the central shift by `expected_shift`,
/// both as elements and as maps of 10 points of `H² × R`.
pub fn check_shift(product: &Sl2TildeElement, expected_shift: f64, chi_orb: i64) -> Result<ShiftCheck> {
    let target = Sl2TildeElement::central(expected_shift / TAU);
    let (matrix_residual, displacement_residual) = product.distance(&target);
    let mut action_residual: f64 = 0.0;
    for (z, th) in sample_points() {
        let (w, t) = product.act(z, th)?;
        action_residual = action_residual.max((w - z).norm()).max((t - th - expected_shift).abs());
    }
    Ok(ShiftCheck {
        chi_orb,
        shift: product.base_disp,
        shift_over_2pi: product.base_disp / TAU,
        expected_shift,
        matrix_residual,
        displacement_residual,
        action_residual,
    })
}

/// Lifted Gauss–Bonnet identity: the commutator product of preferred lifts is
/// the central shift by `−2π χ^orb = 4π` for a closed genus-2 surface.
pub fn gauss_bonnet_lift_check(grp: &FuchsianGenus2) -> Result<ShiftCheck> {
    let lifts = LiftAssignment::preferred(grp, 0)?;
    let product = lifts.commutator_product()?;
    let chi = -2;
    check_shift(&product, -TAU * chi as f64, chi)
}

/// Adds the central shifts `2π w` to the generator lifts.
pub fn weil_fibre_action(w: &[i64], lifts: &LiftAssignment) -> Result<LiftAssignment> {
    if w.len() != lifts.lifts.len() {
        return Err(Error::InvalidInput(format!("expected {} offsets, got {}", lifts.lifts.len(), w.len())));
    }
    let shifted = lifts
        .lifts
        .iter()
        .zip(w)
        .map(|(l, &k)| Sl2TildeElement::central(k as f64).mul(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftAssignment { lifts: shifted, r: lifts.r })
}

/// Effect of the automorphism `uᵢ ↦ uᵢ h^{c_{2i−1}}, vᵢ ↦ vᵢ h^{c_{2i}}` on lifts.
pub fn aut_action_on_lifts(c: &[i64], lifts: &LiftAssignment) -> Result<LiftAssignment> {
    if c.len() != lifts.lifts.len() {
        return Err(Error::InvalidInput(format!("expected {} exponents, got {}", lifts.lifts.len(), c.len())));
    }
    let h = lifts.h();
    let moved = lifts
        .lifts
        .iter()
        .zip(c)
        .map(|(l, &k)| l.mul(&h.pow(k)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftAssignment { lifts: moved, r: lifts.r })
}
