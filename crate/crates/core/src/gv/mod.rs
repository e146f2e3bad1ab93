//! The complex Godbillon–Vey invariant of taut contact circles on S³: pointwise
//! solution of `dω = γ∧ω`, quadrature of `∫γ∧dγ` on a two-chart atlas, and the
//! transverse-conformality check.

pub mod closed;
pub mod frame;
pub mod quadrature;

pub use closed::{gv_closed_form, gv_n_family_via_a, moduli_value_from_gv, S3_VOLUME};
pub use frame::{
    formal_integrability_residual, gamma_residuals, lie_derivative_by_flow, quaternion_frame, solve_gamma,
    transverse_conformal_check, transverse_field, AmbientForm, TransverseCheck,
};
pub use quadrature::{gv_estimate, gv_integral, GvEstimate, GvOptions, S3Atlas, DEFAULT_RESOLUTION, MAX_RESOLUTION, MIN_RESOLUTION};
