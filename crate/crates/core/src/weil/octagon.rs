use crate::error::{Error, Result};
use crate::lie::{MobiusClass, Psl2Element};
use std::f64::consts::PI;

/// Genus-2 Fuchsian group: four side pairings of a regular octagon centred at `i`.
#[derive(Clone, Debug)]
pub struct FuchsianGenus2 {
    /// `[ū₁, v̄₁, ū₂, v̄₂]`
    pub generators: [Psl2Element; 4],
    /// Inradius of the octagon.
    pub inradius: f64,
}

/// Interior angle at the vertices of a regular hyperbolic octagon with inradius `rho`.
pub fn octagon_vertex_angle(rho: f64) -> f64 {
    2.0 * (rho.cosh() * (PI / 8.0).sin()).clamp(-1.0, 1.0).acos()
}

/// Inradius for which all eight vertex angles are π/4, by bisection.
pub fn solve_inradius() -> f64 {
    let target = PI / 4.0;
    let (mut lo, mut hi) = (1e-6, 5.0);
    // the vertex angle decreases from 3π/4 towards 0 as the octagon grows
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if octagon_vertex_angle(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Side pairing `g_j`: half-turn about the midpoint of side `j` followed by the
/// rotation through `π/2` about `i`, so side `j` is carried onto side `j+2`.
pub fn side_pairing(rho: f64, j: u32) -> Psl2Element {
    let e = (rho / 2.0).exp();
    let d = Psl2Element::diag(e);
    let half_turn = Psl2Element::rotation(PI / 2.0).conjugate_by(&d);
    let g0 = Psl2Element::rotation(PI / 4.0).mul(&half_turn);
    g0.conjugate_by(&Psl2Element::rotation(j as f64 * PI / 8.0))
}

pub fn commutator(a: &Psl2Element, b: &Psl2Element) -> Psl2Element {
    a.mul(b).mul(&a.inv()).mul(&b.inv())
}

/// `∏ᵢ[ūᵢ, v̄ᵢ]` evaluated left to right.
pub fn surface_word(gens: &[Psl2Element; 4]) -> Psl2Element {
    commutator(&gens[0], &gens[1]).mul(&commutator(&gens[2], &gens[3]))
}

impl FuchsianGenus2 {
    pub fn from_generators(generators: [Psl2Element; 4], inradius: f64) -> Result<Self> {
        let g = FuchsianGenus2 { generators, inradius };
        g.verify_surface_relation()?;
        Ok(g)
    }

    pub fn relation_residual(&self) -> f64 {
        surface_word(&self.generators).distance(&Psl2Element::IDENTITY)
    }

    pub fn verify_surface_relation(&self) -> Result<()> {
        let r = self.relation_residual();
        if r > 1e-9 {
            return Err(Error::Verification(format!("surface relation residual {r:e}")));
        }
        if self.generators.iter().any(|g| g.classify() != MobiusClass::Hyperbolic) {
            return Err(Error::Verification("a side pairing is not hyperbolic".into()));
        }
        Ok(())
    }

    /// The whole group conjugated by `k`.
    pub fn conjugate_by(&self, k: &Psl2Element) -> Result<Self> {
        let gens = self.generators.map(|g| g.conjugate_by(k));
        Self::from_generators(gens, self.inradius)
    }
}

/// Regular octagon with vertex angle π/4 and the pairing pattern
/// `a₁ b₁ a₁⁻¹ b₁⁻¹ a₂ b₂ a₂⁻¹ b₂⁻¹` (sides 0↔2, 1↔3, 4↔6, 5↔7).
pub fn octagon_group() -> Result<FuchsianGenus2> {
    let rho = solve_inradius();
    let g = |j| side_pairing(rho, j);
    FuchsianGenus2::from_generators([g(0).inv(), g(1), g(4).inv(), g(5)], rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inradius_matches_trigonometry() {
        let rho = solve_inradius();
        assert!((rho.cosh() - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!((octagon_vertex_angle(rho) - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn relation_holds() {
        let grp = octagon_group().unwrap();
        assert!(grp.relation_residual() < 1e-9);
        for g in &grp.generators {
            assert!(g.trace().abs() > 2.0);
        }
    }

    #[test]
    fn generators_do_not_commute() {
        let gens = octagon_group().unwrap().generators;
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(commutator(&gens[i], &gens[j]).distance(&Psl2Element::IDENTITY) > 1e-3);
            }
        }
    }
}
