//! Exact classification of deformed intersections of half-spaces.
//!
//! Polyhedra `P(a, I, J, K) = {x : U_I x = a_I, U_J x <= a_J, U_K x >= a_K}`
//! are studied as the offset vector `a` varies. The derived arrangement of the
//! circuits of `U` partitions offset space into open faces, and offsets in one
//! open face give sign equivalent translations, conings and lifts.

pub mod arrangement;
pub mod deformations;
pub mod derived;
pub mod error;
pub mod exactla;
pub mod feasibility;
pub mod json;
pub mod om;
pub mod operators;
pub mod polyhedron;
pub mod poset;
pub mod random;
pub mod sign;
pub mod suites;

pub use error::Error;
pub use exactla::{Rat, RatMatrix, RatVector};
pub use sign::{Sign, SignVector};
