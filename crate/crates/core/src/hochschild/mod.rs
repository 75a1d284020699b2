//! Hochschild homology over Q from structure constants.
//!
//! [`bar`] builds the cyclic bar complex with `b`, `t` and `B`;
//! [`secondary`] iterates it once more for algebras with two compatible
//! products and totalizes the resulting bicomplex.

pub mod algebra;
pub mod bar;
pub mod linalg;
pub mod secondary;

pub use algebra::{builtin, StructureConstantAlgebra, TwoAlgebra, ValidationReport, BUILTIN_NAMES};
pub use bar::{cyclic_bar, hh0_direct, hh_betti, hh_betti_with, ChainComplexQ, IdentityCheck};
pub use linalg::SparseMatrix;
pub use secondary::{bicyclic_rotations, secondary_hh_betti, BicyclicModule, IterationOrder};

pub fn validate_algebra(a: &StructureConstantAlgebra) -> ValidationReport {
    a.validate()
}

pub fn validate_two_algebra(a: &TwoAlgebra) -> ValidationReport {
    a.validate()
}
