//! Generic perturbation of commutative-algebra objects over polynomial
//! rings and their quotients: Gröbner bases, grade and height, Koszul and
//! Eagon–Northcott complexes, determinantal ideals, and certified random
//! perturbations that make sequences regular or ideals of expected height.

pub mod complexes;
pub mod determinantal;
pub mod error;
pub mod groebner;
pub mod ideal_theory;
pub mod perturb;
pub mod ring;

pub use error::{Error, Result};

/// Crate version, recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
