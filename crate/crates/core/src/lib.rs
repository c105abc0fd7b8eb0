//! Exact computations with finite complex reflection groups.

pub mod arith;
pub mod coset;
pub mod cyclotomic;
pub mod error;
pub mod gensets;
pub mod group;
pub mod hurwitz;
pub mod invariants;
pub mod linalg;
pub mod noncrossing;
pub mod regularity;
pub mod scalar;

pub use cyclotomic::{CycloNum, Rational};
pub use error::{Error, Result};
pub use group::{Group, GroupSpec, GroupTable};
pub use linalg::{Matrix, Subspace};
pub use scalar::Field;

/// Matrices over a cyclotomic field; the type group elements are stored as.
pub type CycloMatrix = Matrix<CycloNum>;
pub type CycloSubspace = Subspace<CycloNum>;
pub type RationalMatrix = Matrix<Rational>;
pub type RationalSubspace = Subspace<Rational>;
