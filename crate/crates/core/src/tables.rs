//! The classification tables recomputed from the library, as one JSON document.
//! Where a table entry is compared with a printed value, both are kept.

use crate::e2moduli::{moduli_descriptor, table1, TorusBundleSpec, PERIODS};
use crate::error::Result;
use crate::su2::{lens_moduli, lens_teichmuller, out0, teichmuller_count, SubgroupSpec};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonodromyModuli {
    pub k: u32,
    pub moduli: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LensRow {
    pub m: u64,
    pub space: String,
    pub components: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientModuli {
    pub non_abelian: String,
    pub lens: Vec<LensRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Out0Row {
    pub column: String,
    pub group: String,
    pub order: usize,
    pub out: usize,
    pub out0: usize,
    pub out0_tag: String,
    pub printed_out0_tag: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountRow {
    pub column: String,
    pub group: String,
    pub teichmuller_count: String,
    pub printed: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PaperTables {
    pub torus_bundles: Vec<TorusBundleSpec>,
    pub torus_bundle_moduli: Vec<MonodromyModuli>,
    pub su2_quotient_moduli: QuotientModuli,
    pub out0: Vec<Out0Row>,
    pub teichmuller_counts: Vec<CountRow>,
    pub lens_teichmuller: Vec<LensRow>,
}

/// One representative per column of the non-abelian tables.
pub fn column_representatives() -> [SubgroupSpec; 6] {
    [
        SubgroupSpec::q8(),
        SubgroupSpec::Dstar(12),
        SubgroupSpec::Dstar(16),
        SubgroupSpec::Tstar,
        SubgroupSpec::Ostar,
        SubgroupSpec::Istar,
    ]
}

const PRINTED_OUT0: [&str; 6] = ["S3", "C2", "1", "C2", "1", "1"];
const PRINTED_COUNTS: [&str; 6] = ["|Λ|/6", "|Λ|/2", "|Λ|", "|Λ|/2", "|Λ|", "|Λ|"];

fn lens_row(l: crate::su2::LensModuli) -> LensRow {
    LensRow { m: l.m, space: l.rendered, components: l.components.iter().map(|c| c.description()).collect() }
}

pub fn paper_tables() -> Result<PaperTables> {
    let torus_bundles = PERIODS.iter().map(|&k| table1(k)).collect::<Result<Vec<_>>>()?;
    let torus_bundle_moduli = PERIODS
        .iter()
        .map(|&k| Ok(MonodromyModuli { k, moduli: moduli_descriptor(k)?.rendered }))
        .collect::<Result<Vec<_>>>()?;
    let lens = (1..=4).map(|m| Ok(lens_row(lens_moduli(m)?))).collect::<Result<Vec<_>>>()?;
    let mut out0_rows = Vec::new();
    let mut counts = Vec::new();
    for (i, spec) in column_representatives().into_iter().enumerate() {
        let r = out0(spec)?;
        let column = spec.table_family().to_string();
        out0_rows.push(Out0Row {
            column: column.clone(),
            group: r.group.clone(),
            order: r.order,
            out: r.out,
            out0: r.out0,
            agrees: r.out0_tag == PRINTED_OUT0[i],
            out0_tag: r.out0_tag,
            printed_out0_tag: PRINTED_OUT0[i].into(),
        });
        let c = teichmuller_count(spec)?;
        counts.push(CountRow {
            column,
            group: r.group,
            agrees: c == PRINTED_COUNTS[i],
            teichmuller_count: c,
            printed: PRINTED_COUNTS[i].into(),
        });
    }
    let lens_teich = (1..=4).map(|m| Ok(lens_row(lens_teichmuller(m)?))).collect::<Result<Vec<_>>>()?;
    Ok(PaperTables {
        torus_bundles,
        torus_bundle_moduli,
        su2_quotient_moduli: QuotientModuli { non_abelian: "point".into(), lens },
        out0: out0_rows,
        teichmuller_counts: counts,
        lens_teichmuller: lens_teich,
    })
}

/// Pretty JSON with a trailing newline; the byte-exact golden rendering.
pub fn render_paper_tables() -> Result<String> {
    let t = paper_tables()?;
    Ok(serde_json::to_string_pretty(&t).expect("tables serialize") + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_the_last_binary_dihedral_column_disagrees() {
        let t = paper_tables().unwrap();
        let bad: Vec<&str> = t.out0.iter().filter(|r| !r.agrees).map(|r| r.group.as_str()).collect();
        assert_eq!(bad, vec!["Dstar16"]);
        let bad: Vec<&str> = t.teichmuller_counts.iter().filter(|r| !r.agrees).map(|r| r.group.as_str()).collect();
        assert_eq!(bad, vec!["Dstar16"]);
        assert_eq!(t.torus_bundles.len(), 5);
        assert_eq!(t.lens_teichmuller[0].space, "M1 + M1 + M2 + M2");
    }
}
