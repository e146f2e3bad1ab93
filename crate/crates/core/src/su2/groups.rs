use super::cyclo::{CyclotomicField, ExactQuat};
use crate::algebra::{group_closure, FiniteGroupTable};
use crate::error::{invalid, Error, Result};
use crate::lie::UnitQuaternion;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Finite subgroups of SU(2): cyclic `C_m`, binary dihedral `D*_{4n}` (order 4n),
/// binary tetrahedral, octahedral and icosahedral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubgroupSpec {
    Cyclic(u32),
    /// Carries the order `4n`.
    Dstar(u32),
    Tstar,
    Ostar,
    Istar,
}

impl SubgroupSpec {
    pub fn q8() -> Self {
        SubgroupSpec::Dstar(8)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SubgroupSpec::Cyclic(0) => invalid("C_m needs m ≥ 1"),
            SubgroupSpec::Dstar(o) if o % 4 != 0 || o < 8 => {
                invalid(format!("D*_{o}: the order must be 4n with n ≥ 2"))
            }
            _ => Ok(()),
        }
    }

    pub fn expected_order(&self) -> usize {
        match *self {
            SubgroupSpec::Cyclic(m) => m as usize,
            SubgroupSpec::Dstar(o) => o as usize,
            SubgroupSpec::Tstar => 24,
            SubgroupSpec::Ostar => 48,
            SubgroupSpec::Istar => 120,
        }
    }

    /// Conductor of the cyclotomic field holding the generators.
    pub fn field_conductor(&self) -> u32 {
        match *self {
            SubgroupSpec::Cyclic(m) => m.lcm(&4),
            SubgroupSpec::Dstar(o) => (o / 2).lcm(&4),
            SubgroupSpec::Tstar => 4,
            SubgroupSpec::Ostar => 8,
            SubgroupSpec::Istar => 20,
        }
    }

    pub fn is_abelian_family(&self) -> bool {
        matches!(self, SubgroupSpec::Cyclic(_))
    }

    /// Column of the Out₀ and Teichmüller tables this group belongs to.
    pub fn table_family(&self) -> &'static str {
        match *self {
            SubgroupSpec::Cyclic(_) => "C_m",
            SubgroupSpec::Dstar(8) => "Q8",
            SubgroupSpec::Dstar(o) if o % 8 == 4 => "D*_{8n+4}",
            SubgroupSpec::Dstar(_) => "D*_{8n+8}",
            SubgroupSpec::Tstar => "T*",
            SubgroupSpec::Ostar => "O*",
            SubgroupSpec::Istar => "I*",
        }
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SubgroupSpec::Cyclic(m) => write!(f, "C{m}"),
            SubgroupSpec::Dstar(8) => write!(f, "Q8"),
            SubgroupSpec::Dstar(o) => write!(f, "Dstar{o}"),
            SubgroupSpec::Tstar => write!(f, "Tstar"),
            SubgroupSpec::Ostar => write!(f, "Ostar"),
            SubgroupSpec::Istar => write!(f, "Istar"),
        }
    }
}

impl FromStr for SubgroupSpec {
    type Err = Error;

    /// Accepts `C5`, `Q8`, `Dstar12`, `Tstar`, `Ostar`, `Istar` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let num = |p: &str| -> Result<u32> { p.parse().map_err(|_| Error::Parse(format!("bad group tag {s:?}"))) };
        let spec = match t.as_str() {
            "q8" => SubgroupSpec::Dstar(8),
            "tstar" | "t*" => SubgroupSpec::Tstar,
            "ostar" | "o*" => SubgroupSpec::Ostar,
            "istar" | "i*" => SubgroupSpec::Istar,
            _ => {
                if let Some(rest) = t.strip_prefix("dstar").or_else(|| t.strip_prefix("d*")) {
                    SubgroupSpec::Dstar(num(rest)?)
                } else if let Some(rest) = t.strip_prefix('c') {
                    SubgroupSpec::Cyclic(num(rest)?)
                } else {
                    return Err(Error::Parse(format!("unknown group tag {s:?}")));
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A finite subgroup with exact quaternion elements.
pub struct QuaternionGroup {
    pub spec: SubgroupSpec,
    pub field: CyclotomicField,
    pub table: FiniteGroupTable,
    pub elements: Vec<ExactQuat>,
    /// Generator names in the order of `table.generator_indices`.
    pub generator_names: Vec<&'static str>,
}

fn half(f: &CyclotomicField, x: &super::cyclo::Cyc) -> super::cyclo::Cyc {
    f.scale(x, &Rational::new(BigInt::from(1), BigInt::from(2)))
}

/// Candidate icosahedral second generators `(φ + σ(±φ⁻¹, ±1, 0))/2` over even
/// permutations σ of the imaginary axes and sign choices; the first entry is
/// `(φ + φ⁻¹ i + j)/2`.
fn icosian_candidates(f: &CyclotomicField) -> Vec<ExactQuat> {
    let sqrt5 = f.sqrt5();
    let phi = half(f, &f.add(&f.one(), &sqrt5));
    let phi_inv = half(f, &f.sub(&sqrt5, &f.one()));
    let one = f.one();
    let zero = f.zero();
    let mut out = Vec::new();
    let perms: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    // coordinates (i, j, k) before permutation: (φ⁻¹, 1, 0)
    let base = [phi_inv.clone(), one.clone(), zero.clone()];
    for p in perms {
        for signs in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
            let mut ijk = [zero.clone(), zero.clone(), zero.clone()];
            for (src, &dst) in p.iter().enumerate() {
                ijk[dst] = base[src].clone();
            }
            let nz: Vec<usize> = (0..3).filter(|&t| !f.is_zero(&ijk[t])).collect();
            if signs.0 < 0 {
                ijk[nz[0]] = f.neg(&ijk[nz[0]]);
            }
            if signs.1 < 0 {
                ijk[nz[1]] = f.neg(&ijk[nz[1]]);
            }
            let q = f.quat_from_parts(&half(f, &phi), &half(f, &ijk[0]), &half(f, &ijk[1]), &half(f, &ijk[2]));
            out.push(q);
        }
    }
    out
}

fn pow(f: &CyclotomicField, q: &ExactQuat, n: u32) -> ExactQuat {
    let mut acc = f.quat_one();
    for _ in 0..n {
        acc = f.quat_mul(&acc, q);
    }
    acc
}

/// `a² = (ab)³ = b⁵`, `a⁴ = 1`.
pub fn icosahedral_relations_hold(f: &CyclotomicField, a: &ExactQuat, b: &ExactQuat) -> bool {
    let a2 = pow(f, a, 2);
    let ab = f.quat_mul(a, b);
    pow(f, a, 4) == f.quat_one() && pow(f, &ab, 3) == a2 && pow(f, b, 5) == a2
}

/// The generators for `spec`, with their names.
pub fn generators(spec: SubgroupSpec, f: &CyclotomicField) -> Result<Vec<(&'static str, ExactQuat)>> {
    spec.validate()?;
    let (z, o) = (f.zero(), f.one());
    let qi = f.quat_from_parts(&z, &o, &z, &z);
    let qj = f.quat_from_parts(&z, &z, &o, &z);
    Ok(match spec {
        SubgroupSpec::Cyclic(m) => {
            vec![("x", f.quat_from_parts(&f.cos_2pi(1, m), &f.sin_2pi(1, m), &z, &z))]
        }
        SubgroupSpec::Dstar(order) => {
            let n = order / 4;
            // cos(π/n) + j sin(π/n)
            let y = f.quat_from_parts(&f.cos_2pi(1, 2 * n), &z, &f.sin_2pi(1, 2 * n), &z);
            vec![("x", qi), ("y", y)]
        }
        SubgroupSpec::Tstar | SubgroupSpec::Ostar => {
            let mh = Rational::new(BigInt::from(-1), BigInt::from(2));
            let c = f.rational(mh);
            let zq = f.quat_from_parts(&c, &c, &c, &c);
            let mut g = vec![("x", qi), ("y", qj), ("z", zq)];
            if spec == SubgroupSpec::Ostar {
                let r = half(f, &f.sqrt2());
                g.push(("w", f.quat_from_parts(&z, &r, &z, &f.neg(&r))));
            }
            g
        }
        SubgroupSpec::Istar => {
            let b = icosian_candidates(f)
                .into_iter()
                .find(|b| icosahedral_relations_hold(f, &qi, b))
                .ok_or_else(|| Error::Verification("no icosian satisfies the I* relations".into()))?;
            vec![("a", qi), ("b", b)]
        }
    })
}

pub fn label(f: &CyclotomicField, q: &ExactQuat) -> String {
    let u = f.to_unit_quaternion(q);
    let r = |x: f64| {
        let y = (x * 1e6).round() / 1e6;
        if y == 0.0 {
            0.0
        } else {
            y
        }
    };
    format!("({}, {}, {}, {})", r(u.a0), r(u.a1), r(u.b0), r(u.b1))
}

/// Closes the generators of `spec` into an exact group table (identity at index 0).
pub fn build_group(spec: SubgroupSpec) -> Result<QuaternionGroup> {
    spec.validate()?;
    let field = CyclotomicField::new(spec.field_conductor());
    let gens = generators(spec, &field)?;
    for (name, g) in &gens {
        if field.norm_sqr(g) != field.one() {
            return Err(Error::Verification(format!("generator {name} is not a unit quaternion")));
        }
    }
    let elems: Vec<ExactQuat> = gens.iter().map(|(_, g)| g.clone()).collect();
    let cap = 4 * spec.expected_order().max(30);
    let closure = group_closure(
        field.quat_one(),
        &elems,
        |p, q| field.quat_mul(p, q),
        |q| label(&field, q),
        cap,
    )?;
    if closure.table.order != spec.expected_order() {
        return Err(Error::Verification(format!(
            "{spec}: closure has order {}, expected {}",
            closure.table.order,
            spec.expected_order()
        )));
    }
    Ok(QuaternionGroup {
        spec,
        table: closure.table,
        elements: closure.elements,
        generator_names: gens.iter().map(|(n, _)| *n).collect(),
        field,
    })
}

impl QuaternionGroup {
    pub fn unit(&self, idx: usize) -> UnitQuaternion {
        self.field.to_unit_quaternion(&self.elements[idx])
    }

    pub fn index_of(&self, q: &ExactQuat) -> Option<usize> {
        self.elements.iter().position(|e| e == q)
    }

    /// Index of the element nearest to a floating-point quaternion.
    pub fn nearest(&self, q: &UnitQuaternion) -> (usize, f64) {
        (0..self.table.order)
            .map(|i| (i, self.unit(i).distance(q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty group")
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|&n| n == name).map(|p| self.table.generator_indices[p])
    }
}
