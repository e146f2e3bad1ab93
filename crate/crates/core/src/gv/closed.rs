use crate::cartan::TautFamily;
use crate::error::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Volume of the unit 3-sphere, `2π²`.
pub const S3_VOLUME: f64 = 2.0 * PI * PI;

/// Printed closed forms: `−2|S³|/(a(1−a))` and `−2n|S³|/(n+1)²`.
pub fn gv_closed_form(fam: &TautFamily) -> Result<Complex64> {
    fam.validate()?;
    Ok(match *fam {
        TautFamily::A(a) => -2.0 * S3_VOLUME / (a * (Complex64::new(1.0, 0.0) - a)),
        TautFamily::N(n) => {
            let n = f64::from(n);
            Complex64::new(-2.0 * n * S3_VOLUME / ((n + 1.0) * (n + 1.0)), 0.0)
        }
    })
}

/// The a-family formula at `a = n/(n+1)`, i.e. `−2(n+1)²|S³|/n`. The z₂ⁿdz₂ term
/// is exact and leaves γ∧dγ unchanged up to an exact form, so this is the value the
/// quadrature converges to for the n-family.
pub fn gv_n_family_via_a(n: u32) -> Result<Complex64> {
    let a = f64::from(n) / (f64::from(n) + 1.0);
    gv_closed_form(&TautFamily::A(Complex64::new(a, 0.0)))
}

/// `a(1−a) = −2|S³|/GV`; the preimage of a value under the moduli map.
pub fn moduli_value_from_gv(gv: Complex64) -> Complex64 {
    -2.0 * S3_VOLUME / gv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_in_a() {
        for a in [Complex64::new(0.3, 0.1), Complex64::new(0.5, -2.0), Complex64::new(0.9, 0.0)] {
            let x = gv_closed_form(&TautFamily::A(a)).unwrap();
            let y = gv_closed_form(&TautFamily::A(Complex64::new(1.0, 0.0) - a)).unwrap();
            assert!((x - y).norm() < 1e-12 * x.norm());
        }
        assert!((gv_closed_form(&TautFamily::A(Complex64::new(0.5, 0.0))).unwrap().re + 8.0 * S3_VOLUME).abs() < 1e-11 * S3_VOLUME);
    }

    #[test]
    fn n_family_is_bounded() {
        for n in 1..50 {
            assert!(gv_closed_form(&TautFamily::N(n)).unwrap().norm() <= S3_VOLUME / 2.0 + 1e-12);
        }
        assert!((gv_n_family_via_a(2).unwrap().re + 9.0 * S3_VOLUME).abs() < 1e-10);
        assert!(gv_closed_form(&TautFamily::N(0)).is_err());
    }
}
