use super::lifts::{check_shift, LiftAssignment, ShiftCheck};
use super::octagon::FuchsianGenus2;
use crate::algebra::{smith_normal_form, IntMatrix};
use crate::error::{invalid, Result};
use crate::seifert::{admits_sl2, chi_orb, det_c, matrix_c, raymond_vasquez, SeifertData};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// `∏[ρ₀(uᵢ), ρ₀(v̄ᵢ)] = ρ₀(h)^b`, i.e. the central shift `2π r b`, for closed
/// genus-2 Seifert data over the octagon group.
pub fn rho0_relation_check(grp: &FuchsianGenus2, s: &SeifertData) -> Result<ShiftCheck> {
    if s.g != 2 || s.n() != 0 {
        return invalid("the octagon group realizes closed genus-2 bases only");
    }
    let adm = admits_sl2(s);
    if !adm.admissible {
        return invalid(format!("Seifert data not admissible: {}", adm.reasons.join("; ")));
    }
    let cert = raymond_vasquez(s).ok_or_else(|| crate::Error::InvalidInput("no Raymond–Vasquez certificate".into()))?;
    let lifts = LiftAssignment::preferred(grp, cert.r)?;
    let product = lifts.commutator_product()?;
    let hb = lifts.h().pow(s.b)?;
    let chi = chi_orb(s).to_integer().to_i64().unwrap_or(0);
    check_shift(&product, hb.base_disp, chi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessVerdict {
    pub det_c: String,
    pub kernel_dimension: usize,
    pub unique: bool,
    /// Integer basis of the rational kernel of C.
    pub kernel_basis: Vec<Vec<String>>,
    pub verdict: String,
}

/// Solves `C (x₁ … xₙ y)ᵀ = 0` over ℚ: the lifts of `h` and `qⱼ` are forced iff the kernel is trivial.
pub fn lift_uniqueness(s: &SeifertData) -> UniquenessVerdict {
    let c = matrix_c(s);
    let snf = smith_normal_form(&c);
    let kernel = snf.kernel_basis();
    let det = det_c(s);
    let unique = kernel.is_empty();
    let verdict = if unique {
        "unique lift of h and q_j".to_string()
    } else if det.is_zero() {
        "non-unique (e=0 excluded)".to_string()
    } else {
        "non-unique".to_string()
    };
    UniquenessVerdict {
        det_c: det.to_string(),
        kernel_dimension: kernel.len(),
        unique,
        kernel_basis: kernel.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
        verdict,
    }
}

/// Size of `ℤ^{2g} / r ℤ^{2g}`, the fibre modulo the action of the automorphisms
/// `uᵢ ↦ uᵢ h^{c}`; `None` when `r = 0` (infinite quotient).
pub fn fibre_quotient_size(r: i64, g: u32) -> Option<BigInt> {
    let n = 2 * g as usize;
    if n == 0 {
        return Some(BigInt::from(1));
    }
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, BigInt::from(r));
    }
    let snf = smith_normal_form(&m);
    if snf.rank() < n {
        return None;
    }
    Some(snf.d.iter().product())
}

/// Central displacement of `ρ(h)^b` for the given fibre index.
pub fn h_shift(r: i64, b: i64) -> f64 {
    TAU * (r * b) as f64
}
