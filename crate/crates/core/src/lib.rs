//! Exact integer-lattice computations for deciding which finite groups of
//! mapping classes of an Enriques manifold are realized by isometries of an
//! Einstein metric.
//!
//! The library works entirely at the level of the second cohomology lattice:
//! it builds the lattices and deck actions of the two known families, lifts a
//! group to the cover, splits the lattice into isotypic pieces, and searches
//! the negative-definite part for wall classes. All arithmetic is exact.

pub mod cli;
pub mod criterion;
pub mod enriques;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod io;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod scenarios;
pub mod snf;

pub use criterion::{check_realizability, cyclic_extension_splits, lift_group, GroupSpec, Verdict};
pub use enriques::{build_k3n_setup, build_kumn_setup, mukai_dimension, EnriquesSetup, WallPredicate};
pub use enumeration::{enumerate_norm, DefiniteLattice, NormShell};
pub use error::{Error, Result};
pub use group::{compute_ig, compute_lg, isotypic_decomposition, MatrixGroup};
pub use isometry::Isometry;
pub use lattice::{IntegerLattice, Signature, Sublattice};
pub use matrix::IntMatrix;
