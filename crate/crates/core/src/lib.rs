//! Exact verification of resolutions of the diagonal bimodule over quotient
//! polynomial rings.

pub mod bimodcalc;
pub mod catalog;
pub mod cli;
pub mod complexes;
pub mod groebner;
pub mod linalg;
pub mod polyring;
pub mod scalars;
pub mod witness;
