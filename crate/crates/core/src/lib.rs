//! Exact computations with nets of quadrics: Groebner bases, multiplicity
//! algebras, discriminants of pencils and symmetroids, plane curve invariants
//! and the genus-2 and genus-3 bundle constructions built on them.

pub mod curves;
pub mod error;
pub mod exactpoly;
pub mod genus2;
pub mod genus3;
pub mod groebner;
pub mod linalg;
pub mod macaulay;
pub mod multalg;
pub mod quadrics;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
