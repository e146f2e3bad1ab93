use super::groups::{build_group, QuaternionGroup, SubgroupSpec};
use crate::algebra::{automorphism_group, outer_classes, structure_tag, GroupMap, OuterClasses};
use crate::error::{invalid, Result};
use crate::lie::{mat2_det, mat2_distance, mat2_mul, quat_to_su2, Su2Matrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Below this smallest singular value the intertwiner space is taken to be a line.
pub const NULL_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntertwinerResult {
    pub dimension: usize,
    /// Normalized to determinant 1 when realizable.
    pub matrix: Option<Su2Matrix>,
    pub realizable: bool,
    pub smallest_singular_value: f64,
    /// `max_u |φ ρ(u) − ρ(ϑ u) φ|` for the representative.
    pub residual: f64,
}

/// Solves `φ ρ(u) = ρ(ϑ(u)) φ` for all `u` as the nullspace of the stacked 4·|Γ| × 4 system.
pub fn solve_intertwiner(grp: &QuaternionGroup, theta: &GroupMap) -> IntertwinerResult {
    let n = grp.table.order;
    let rho: Vec<Su2Matrix> = (0..n).map(|i| quat_to_su2(&grp.unit(i))).collect();
    let mut m = DMatrix::<Complex64>::zeros(4 * n, 4);
    let zero = Complex64::new(0.0, 0.0);
    for u in 0..n {
        let x = &rho[u];
        let y = &rho[theta.apply(u)];
        for i in 0..2 {
            for j in 0..2 {
                let row = 4 * u + 2 * i + j;
                // coefficient of φ_{ab}: δ_{ia} X_{bj} − Y_{ia} δ_{bj}
                for a in 0..2 {
                    for b in 0..2 {
                        let mut c = zero;
                        if i == a {
                            c += x[b][j];
                        }
                        if b == j {
                            c -= y[i][a];
                        }
                        m[(row, 2 * a + b)] = c;
                    }
                }
            }
        }
    }
    let svd = m.svd(false, true);
    let (kmin, smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, s)| (k, *s))
        .expect("four singular values");
    let dimension = svd.singular_values.iter().filter(|&&s| s < NULL_THRESHOLD).count();
    if dimension == 0 {
        return IntertwinerResult { dimension, matrix: None, realizable: false, smallest_singular_value: smin, residual: f64::NAN };
    }
    let vt = svd.v_t.expect("requested V^T");
    let v: Vec<Complex64> = (0..4).map(|c| vt[(kmin, c)].conj()).collect();
    let mut phi = [[v[0], v[1]], [v[2], v[3]]];
    let det = mat2_det(&phi);
    let realizable = det.norm() > 1e-6;
    if realizable {
        let s = det.sqrt();
        for row in phi.iter_mut() {
            for e in row.iter_mut() {
                *e /= s;
            }
        }
    }
    let residual = intertwining_residual(grp, theta, &phi);
    IntertwinerResult { dimension, matrix: realizable.then_some(phi), realizable, smallest_singular_value: smin, residual }
}

pub fn intertwining_residual(grp: &QuaternionGroup, theta: &GroupMap, phi: &Su2Matrix) -> f64 {
    (0..grp.table.order)
        .map(|u| {
            let x = quat_to_su2(&grp.unit(u));
            let y = quat_to_su2(&grp.unit(theta.apply(u)));
            mat2_distance(&mat2_mul(phi, &x), &mat2_mul(&y, phi))
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OuterClassInfo {
    pub index: usize,
    /// Images of the named generators, as element labels.
    pub generator_images: Vec<(String, String)>,
    pub realizable: bool,
    pub smallest_singular_value: f64,
    pub residual: Option<f64>,
    /// Entries of φ as `[re, im]`.
    pub witness: Option<[[[f64; 2]; 2]; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Out0Result {
    pub group: String,
    pub order: usize,
    pub aut: usize,
    pub inner: usize,
    pub out: usize,
    pub out0: usize,
    pub out0_tag: String,
    pub out0_is_subgroup: bool,
    pub classes: Vec<OuterClassInfo>,
    /// The realizable classes with their intertwiners.
    pub witnesses: Vec<OuterClassInfo>,
}

/// Everything needed to classify outer automorphisms of one group.
pub struct OuterData {
    pub group: QuaternionGroup,
    pub auts: Vec<GroupMap>,
    pub outer: OuterClasses,
}

pub fn outer_data(spec: SubgroupSpec) -> Result<OuterData> {
    let group = build_group(spec)?;
    let auts = automorphism_group(&group.table);
    let outer = outer_classes(&group.table, &auts);
    Ok(OuterData { group, auts, outer })
}

fn split(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

/// |Out| and the subgroup Out₀ of classes realized by conjugation in SL₂ℂ.
pub fn out0(spec: SubgroupSpec) -> Result<Out0Result> {
    if spec.is_abelian_family() {
        return invalid("Out₀ is only defined here for non-abelian groups");
    }
    let data = outer_data(spec)?;
    let g = &data.group;
    let identity_class = data.outer.class_index(&data.auts, &GroupMap::identity(g.table.order));
    let classes: Vec<OuterClassInfo> = data
        .outer
        .representatives
        .par_iter()
        .enumerate()
        .map(|(idx, rep)| {
            let r = solve_intertwiner(g, rep);
            let generator_images = g
                .generator_names
                .iter()
                .zip(&g.table.generator_indices)
                .map(|(name, &gi)| (name.to_string(), g.table.labels[rep.apply(gi)].clone()))
                .collect();
            OuterClassInfo {
                index: idx,
                generator_images,
                realizable: r.realizable,
                smallest_singular_value: r.smallest_singular_value,
                residual: r.realizable.then_some(r.residual),
                witness: r.matrix.map(|m| [[split(m[0][0]), split(m[0][1])], [split(m[1][0]), split(m[1][1])]]),
            }
        })
        .collect();

    let realizable: Vec<usize> = classes.iter().filter(|c| c.realizable).map(|c| c.index).collect();
    let closed = realizable.iter().all(|&a| {
        realizable.iter().all(|&b| {
            let m = data.outer.representatives[a].compose(&data.outer.representatives[b]);
            realizable.contains(&data.outer.class_index(&data.auts, &m))
        })
    }) && realizable.contains(&identity_class);
    let out0_tag = structure_tag(&subgroup_table(&data, &realizable));
    Ok(Out0Result {
        group: spec.to_string(),
        order: g.table.order,
        aut: data.auts.len(),
        inner: data.outer.inner_count,
        out: data.outer.count(),
        out0: realizable.len(),
        out0_tag,
        out0_is_subgroup: closed,
        witnesses: classes.iter().filter(|c| c.realizable).cloned().collect(),
        classes,
    })
}

/// Multiplication table of the classes in `subset` (assumed to be a subgroup of Out).
fn subgroup_table(data: &OuterData, subset: &[usize]) -> crate::algebra::FiniteGroupTable {
    let ident = data.outer.class_index(&data.auts, &GroupMap::identity(data.group.table.order));
    let mut order: Vec<usize> = vec![ident];
    order.extend(subset.iter().copied().filter(|&c| c != ident));
    let pos = |c: usize| order.iter().position(|&x| x == c).unwrap_or(0);
    crate::algebra::FiniteGroupTable::from_fn(
        order.len(),
        |a, b| {
            let m = data.outer.representatives[order[a]].compose(&data.outer.representatives[order[b]]);
            pos(data.outer.class_index(&data.auts, &m))
        },
        vec![],
    )
}

/// `|T(M)| = |Λ| / |Out₀(Γ)|`, rendered symbolically.
pub fn teichmuller_count(spec: SubgroupSpec) -> Result<String> {
    let r = out0(spec)?;
    Ok(render_count(r.out0))
}

pub fn render_count(out0: usize) -> String {
    if out0 == 1 {
        "|Λ|".to_string()
    } else {
        format!("|Λ|/{out0}")
    }
}
