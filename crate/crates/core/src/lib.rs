//! Computational toolkit for taut contact circles on 3-manifolds: model-geometry
//! arithmetic, Seifert invariants, finite subgroups of SU(2), torus-bundle moduli,
//! lifted Fuchsian groups and the complex Godbillon–Vey invariant.

pub mod algebra;
pub mod cartan;
pub mod e2moduli;
pub mod error;
pub mod gv;
pub mod lie;
pub mod rational;
pub mod seifert;
pub mod su2;
pub mod tables;
pub mod weil;

pub use error::{Error, Result};
