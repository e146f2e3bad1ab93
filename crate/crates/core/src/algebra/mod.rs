//! Exact integer linear algebra and finite-group tables.

mod group;
mod intmat;
mod snf;

pub use group::{
    automorphism_group, group_closure, inner_automorphisms, outer_classes, structure_tag, Closure,
    FiniteGroupTable, GroupMap, OuterClasses,
};
pub use intmat::IntMatrix;
pub use snf::{abelianization, smith_normal_form, AbelianGroup, SnfResult};
