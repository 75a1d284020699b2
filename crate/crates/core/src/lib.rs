//! Exact algebra of framed tori.
//!
//! * [`braid`]: the braid group B3, its Garside normal form, and Φ: B3 → SL2(Z).
//! * [`mat`]: exact 2×2 integer and rational matrices, monoid membership, HNF.
//! * [`cover`]: the universal-cover monoid of E⁺(Z) in winding-number form.
//! * [`lattice`]: cofinite sublattices, finite torus subgroups and their duality.
//! * [`orbit`]: the finite orbit category of T² and the isogeny action on it.
//! * [`semidirect`]: T² ⋊ M for M = E(Z), B3 and the cover, on rational points.
//! * [`hochschild`]: cyclic bar complexes, Connes' operators and secondary
//!   Hochschild homology over Q.

pub mod braid;
pub mod cli;
pub mod cover;
pub mod error;
pub mod hochschild;
pub mod lattice;
pub mod mat;
pub mod orbit;
pub mod qq;
pub mod selftest;
pub mod semidirect;

pub use error::{Error, Result};
