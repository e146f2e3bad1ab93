//! Finite subgroups of SU(2), their SL₂ℂ-realizable outer automorphisms and the
//! lens-space moduli descriptors.

pub mod cyclo;
pub mod groups;
pub mod lens;
pub mod out0;

pub use cyclo::{cyclotomic_polynomial, Cyc, CyclotomicField, ExactQuat};
pub use groups::{build_group, QuaternionGroup, SubgroupSpec};
pub use lens::{lens_moduli, lens_teichmuller, m2_member, moduli_map_a, LensComponent, LensModuli};
pub use out0::{
    out0, outer_data, render_count, solve_intertwiner, teichmuller_count, IntertwinerResult, Out0Result,
    OuterClassInfo, OuterData,
};
