//! Torus bundles with periodic monodromy, standard forms of Z³-representations,
//! SL₂Z reduction and the moduli descriptors for the Euclidean geometry.

pub mod bundles;
pub mod t3;

pub use bundles::{
    conjugation_relations, h1, moduli_descriptor, monodromy, period, pi1_presentation, rotational_rigidity, table1,
    teichmuller_descriptor, CongruenceSet, Rigidity, SpaceDescriptor, TorusBundleSpec, PERIODS,
};
pub use t3::{
    random_unimodular,
    canonical_form, change_basis, diagonal_action, gcd_unimodular, is_valid_t3_rep, lattice_coords, reduce_mod_lattice,
    sl2z_act, sl2z_mul, sl2z_reduce, stabilizer, symmetry_points, to_standard_form, universal_lattice, Lattice4, Sl2z,
    Sl2zReduction, StandardFormRep, StandardFormResult, Symmetry, Z3Rep,
};
