//! Unimodular covers of three-dimensional lattice polytopes.
//!
//! The library builds explicit covers of lattice parallelepipeds, Cayley sums
//! of a lattice polygon with a weak Minkowski summand, and lattice
//! prismatoids with lattice middle slices, and certifies them with an exact
//! cell-peeling verifier. Every predicate is evaluated in exact integer or
//! rational arithmetic.

pub mod cover;
pub mod cover_cayley;
pub mod cover_para;
pub mod error;
pub mod exact_geom;
pub mod gen;
pub mod idp;
pub mod polytope;
pub mod triangulate;
pub mod verify;
pub mod white;

pub use error::{Error, Result};
