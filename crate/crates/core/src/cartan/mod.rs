//! Coframes on the model geometries in explicit charts, numeric exterior
//! derivatives, and checks of the taut and K-Cartan equations.

pub mod coframes;
pub mod forms;
pub mod s3;
pub mod sampling;

pub use coframes::{
    cartan_residual_at, check_cartan_k, e2_coframe, flat_coframe, select_sl2_variant, sl2_coframe, sl2_coframe_variant,
    CartanResidual, FormResidual, Sl2Variant, SL2_VARIANT,
};
pub use forms::{det3, numeric_d, s3_jacobian, wedge11, wedge12, Chart, ChartPoint, Covector, DiffOptions, TwoForm};
pub use s3::{
    ambient_omega, check_taut, family_pair, su2_taut_circle, TautEvaluation, TautFamily, TautPair, TautResidual,
};
pub use sampling::{sample_points, sample_s3};
