//! Arithmetic of normalized Seifert invariants.

mod data;
mod parse;

pub use data::{
    admits_sl2, chi_orb, det_c, euler_number, fibre_index, h1, matrix_c, orb_presentation, pi1_presentation,
    raymond_vasquez, teichmuller_descriptor, Admissibility, Presentation, RvCertificate, SeifertData,
    TeichmullerDescriptor, Word,
};
pub use parse::{parse_json, parse_seifert, parse_text};
