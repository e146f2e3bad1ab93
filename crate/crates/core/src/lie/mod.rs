//! The model geometries: the universal cover of the Euclidean group, SU(2) as unit
//! quaternions, PSL₂ℝ and its universal cover.

mod e2;
mod psl2;
mod quat;
mod sl2tilde;

pub use e2::{e2_inv, e2_mul, e2_scale, EuclideanMotion};
pub use psl2::{mobius_act, MobiusClass, Psl2Element};
pub use quat::{mat2_det, mat2_distance, mat2_mul, quat_conj, quat_mul, quat_to_su2, Su2Matrix, UnitQuaternion};
pub use sl2tilde::{continued_arg_change, preferred_lift, rotation_angle, Sl2TildeElement};
