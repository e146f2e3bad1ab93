use crate::algebra::{AbelianGroup, IntMatrix};
use crate::error::{invalid, Result};
use crate::seifert::{Presentation, Word};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const PERIODS: [u32; 5] = [1, 2, 3, 4, 6];

/// One row of the table of T²-bundles over S¹ with periodic monodromy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusBundleSpec {
    pub k: u32,
    #[serde(rename = "A")]
    pub a: [[i64; 2]; 2],
    /// `"any"` or the exact lattice parameter.
    pub tau: String,
    pub tau_value: Option<Complex64>,
    #[serde(rename = "H1")]
    pub h1: String,
}

fn check_k(k: u32) -> Result<()> {
    if !PERIODS.contains(&k) {
        return invalid(format!("period k = {k} is not one of 1, 2, 3, 4, 6"));
    }
    Ok(())
}

pub fn monodromy(k: u32) -> Result<[[i64; 2]; 2]> {
    check_k(k)?;
    Ok(match k {
        1 => [[1, 0], [0, 1]],
        2 => [[-1, 0], [0, -1]],
        3 => [[0, -1], [1, -1]],
        4 => [[0, -1], [1, 0]],
        _ => [[0, -1], [1, 1]],
    })
}

fn mat_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Smallest `j ≥ 1` with `Aʲ = I`, if at most 12.
pub fn period(a: &[[i64; 2]; 2]) -> Option<u32> {
    let id = [[1, 0], [0, 1]];
    let mut p = *a;
    for j in 1..=12 {
        if p == id {
            return Some(j);
        }
        p = mat_mul(&p, a);
    }
    None
}

/// `π₁ = ⟨s, t, b | st = ts, bsb⁻¹ = s^α t^γ, btb⁻¹ = s^β t^δ⟩` for `A = [[α, β], [γ, δ]]`.
pub fn pi1_presentation(k: u32) -> Result<Presentation> {
    let [[al, be], [ga, de]] = monodromy(k)?;
    let (s, t, b) = (0usize, 1usize, 2usize);
    let commutator: Word = vec![(s, 1), (t, 1), (s, -1), (t, -1)];
    // b s b⁻¹ (s^α t^γ)⁻¹ and b t b⁻¹ (s^β t^δ)⁻¹
    let conj = |x: usize, p: i64, q: i64| -> Word {
        let mut w: Word = vec![(b, 1), (x, 1), (b, -1)];
        if q != 0 {
            w.push((t, -q));
        }
        if p != 0 {
            w.push((s, -p));
        }
        w
    };
    Ok(Presentation {
        generators: vec!["s".into(), "t".into(), "b".into()],
        relators: vec![commutator, conj(s, al, ga), conj(t, be, de)],
        central: None,
    })
}

/// Printable form of the conjugation relations, e.g. `bsb^-1 = t`.
pub fn conjugation_relations(k: u32) -> Result<[String; 2]> {
    let [[al, be], [ga, de]] = monodromy(k)?;
    let mono = |p: i64, q: i64| {
        let part = |g: &str, e: i64| match e {
            0 => String::new(),
            1 => g.to_string(),
            e => format!("{g}^{e}"),
        };
        let both: Vec<String> = [part("s", p), part("t", q)].into_iter().filter(|x| !x.is_empty()).collect();
        if both.is_empty() {
            "1".into()
        } else {
            both.join(" ")
        }
    };
    Ok([format!("bsb^-1 = {}", mono(al, ga)), format!("btb^-1 = {}", mono(be, de))])
}

/// H₁ recomputed from the presentation by Smith normal form.
pub fn h1(k: u32) -> Result<AbelianGroup> {
    Ok(pi1_presentation(k)?.abelianization())
}

/// The printed H₁ column.
fn printed_h1(k: u32) -> &'static str {
    match k {
        1 => "Z^3",
        2 => "Z+Z2+Z2",
        3 => "Z+Z3",
        4 => "Z+Z2",
        _ => "Z",
    }
}

/// Table row with H₁ recomputed and compared against the printed value.
pub fn table1(k: u32) -> Result<TorusBundleSpec> {
    let a = monodromy(k)?;
    if period(&a) != Some(k) {
        return Err(crate::Error::Verification(format!("monodromy for k = {k} has the wrong period")));
    }
    let computed = h1(k)?.to_string();
    if computed != printed_h1(k) {
        return Err(crate::Error::Verification(format!("H1 for k = {k}: computed {computed}, table {}", printed_h1(k))));
    }
    let (tau, tau_value) = match k {
        1 | 2 => ("any".to_string(), None),
        3 => ("exp(2πi/3)".to_string(), Some(Complex64::new(-0.5, 0.75f64.sqrt()))),
        4 => ("i".to_string(), Some(Complex64::new(0.0, 1.0))),
        _ => ("exp(2πi/6)".to_string(), Some(Complex64::new(0.5, 0.75f64.sqrt()))),
    };
    Ok(TorusBundleSpec { k, a, tau, tau_value, h1: computed })
}

/// `det [[α−1, γ], [β, δ−1]] = 2 − trace A` for the rotational parts of `s` and `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rigidity {
    pub determinant: i64,
    pub kernel_trivial: bool,
}

pub fn rotational_rigidity(a: &[[i64; 2]; 2]) -> Rigidity {
    let [[al, be], [ga, de]] = *a;
    let m = IntMatrix::from_rows(&[vec![al - 1, ga], vec![be, de - 1]]);
    let det = m.determinant();
    let determinant = i64::try_from(&det).expect("2×2 determinant fits in i64");
    Rigidity { determinant, kernel_trivial: determinant != 0 }
}

/// `{r : r ≡ ± residues mod modulus}`, restricted to `r ≥ 1` when `positive`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceSet {
    pub modulus: i64,
    pub residues: Vec<i64>,
    pub positive: bool,
}

impl CongruenceSet {
    pub fn contains(&self, r: i64) -> bool {
        if self.positive && r < 1 {
            return false;
        }
        if r == 0 {
            return false;
        }
        self.residues.contains(&r.rem_euclid(self.modulus))
    }

    pub fn render(&self) -> String {
        let dom = if self.positive { "N" } else { "Z" };
        if self.modulus == 1 {
            return if self.positive { "N".into() } else { "Z-{0}".into() };
        }
        let res = if self.residues.len() == 1 || self.modulus == 2 { "1" } else { "±1" };
        format!("{{r in {dom} : r = {res} mod {}}}", self.modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub k: u32,
    pub discrete: CongruenceSet,
    /// `None` when the space is discrete.
    pub continuous: Option<String>,
    pub rendered: String,
}

fn congruence(k: u32, positive: bool) -> CongruenceSet {
    let m = i64::from(k);
    let residues = match k {
        1 => vec![0],
        2 => vec![1],
        _ => vec![1, m - 1],
    };
    CongruenceSet { modulus: m, residues, positive }
}

fn assemble(k: u32, discrete: CongruenceSet, continuous: Option<&str>) -> SpaceDescriptor {
    let rendered = match continuous {
        Some(c) => format!("{} x {c}", discrete.render()),
        None => discrete.render(),
    };
    SpaceDescriptor { k, discrete, continuous: continuous.map(str::to_string), rendered }
}

/// Moduli space of taut contact circles on the bundle of period k.
pub fn moduli_descriptor(k: u32) -> Result<SpaceDescriptor> {
    check_k(k)?;
    let cont = match k {
        1 => Some("SL2Z\\(H2 x T2)"),
        2 => Some("PSL2Z\\H2"),
        _ => None,
    };
    Ok(assemble(k, congruence(k, true), cont))
}

/// Teichmüller space. For k = 1 it is the rank-3 locus in CP² × Z³; its discrete
/// summary is the gcd `r ∈ N` of the rotational parts.
pub fn teichmuller_descriptor(k: u32) -> Result<SpaceDescriptor> {
    check_k(k)?;
    if k == 1 {
        let cont = "{([z1:z2:z3],(r1,r2,r3)) in CP2 x Z3 : rank_R((z_i, r_i)) = 3}";
        return Ok(SpaceDescriptor { k, discrete: congruence(1, true), continuous: Some(cont.into()), rendered: cont.into() });
    }
    let cont = if k == 2 { Some("(C-R)") } else { None };
    Ok(assemble(k, congruence(k, false), cont))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let t3 = table1(3).unwrap();
        assert_eq!(t3.a, [[0, -1], [1, -1]]);
        assert_eq!(t3.h1, "Z+Z3");
        assert_eq!(table1(1).unwrap().tau, "any");
        assert_eq!(table1(6).unwrap().h1, "Z");
        assert!(table1(5).is_err());
    }

    #[test]
    fn relations_print() {
        assert_eq!(conjugation_relations(2).unwrap(), ["bsb^-1 = s^-1".to_string(), "btb^-1 = t^-1".to_string()]);
        assert_eq!(conjugation_relations(3).unwrap(), ["bsb^-1 = t".to_string(), "btb^-1 = s^-1 t^-1".to_string()]);
    }

    #[test]
    fn rigidity() {
        let dets: Vec<i64> = PERIODS.iter().map(|&k| rotational_rigidity(&monodromy(k).unwrap()).determinant).collect();
        assert_eq!(dets, vec![0, 4, 3, 2, 1]);
    }

    #[test]
    fn congruences() {
        let m4 = moduli_descriptor(4).unwrap();
        assert!(m4.discrete.contains(7));
        assert!(!moduli_descriptor(3).unwrap().discrete.contains(3));
        let m6 = moduli_descriptor(6).unwrap();
        assert!(m6.continuous.is_none());
        assert_eq!(m6.rendered, "{r in N : r = ±1 mod 6}");
        assert_eq!(moduli_descriptor(2).unwrap().rendered, "{r in N : r = 1 mod 2} x PSL2Z\\H2");
        assert_eq!(moduli_descriptor(1).unwrap().rendered, "N x SL2Z\\(H2 x T2)");
        assert!(teichmuller_descriptor(2).unwrap().discrete.contains(-3));
    }
}
