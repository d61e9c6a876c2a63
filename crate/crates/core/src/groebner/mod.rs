//! Gröbner bases of ideals and submodules, normal forms, syzygies and free
//! resolutions.

pub mod engine;
mod ideal;
mod module;
mod resolution;

pub use engine::{set_self_certify, stats, GbStats};
pub use ideal::Ideal;
pub use module::{combine, poly_syzygies, syzygies, FreeVec, Lifter, Submodule};
pub use resolution::{free_resolution, resolve_quotient, Resolution};

pub(crate) use ideal::check_poly;
