//! Matrix factorizations of `W` and their morphism complexes.
//!
//! Objects are free `ℤ/2`-graded modules over the polynomial ring; every
//! finitely generated projective module over `ℂ[x_1, …, x_d]` is free, so no
//! generality is lost in this setting.

mod cohomology;
mod factorization;
mod hom;

pub use cohomology::{compose_classes, default_degree_bound, hom_cohomology, HomCohomology, MorphismClass};
pub use factorization::{koszul_factorization, make_factorization, MatrixFactorization};
pub use hom::{defect_differential, hom_complex, HomComplex};
