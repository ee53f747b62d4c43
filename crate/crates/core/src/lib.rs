//! Exact computations with Nichols algebras of Yetter-Drinfeld modules over
//! finite groups: braided symmetrizers, bosonizations, dual pairings, the
//! functor between relative Yetter-Drinfeld categories and reflections.

pub mod error;
pub mod bosonization;
pub mod coinvariants;
pub mod braided;
pub mod group;
pub mod harness;
pub mod matrix;
pub mod nichols;
pub mod omega;
pub mod pairing;
pub mod reflection;
pub mod relative;
pub mod weyl;
pub mod scalar;
pub mod yd;

pub use error::{Error, Result};
pub use matrix::{CycMatrix, SVec, Subspace};
pub use scalar::CycScalar;
