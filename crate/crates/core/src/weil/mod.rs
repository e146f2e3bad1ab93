//! Lifts of a genus-2 Fuchsian group to the universal cover of PSL₂ℝ.

mod lifts;
mod octagon;
mod uniqueness;

pub use lifts::{aut_action_on_lifts, check_shift, gauss_bonnet_lift_check, weil_fibre_action, LiftAssignment, ShiftCheck};
pub use octagon::{commutator, octagon_group, octagon_vertex_angle, side_pairing, solve_inradius, surface_word, FuchsianGenus2};
pub use uniqueness::{fibre_quotient_size, h_shift, lift_uniqueness, rho0_relation_check, UniquenessVerdict};
