//! Commutator theory on finite algebras: congruence lattices, commutators,
//! prime spectra with the Zariski topology, and the reticulation lattice.
//!
//! Two backends feed the same analysis code through
//! [`structure::CommutatorLattice`]: congruence lattices of concrete finite
//! algebras ([`structure::AlgebraLattice`]) and abstract, user-supplied
//! commutator structures ([`structure::CommutatorStructure`]).

// Index loops mirror the table-based definitions; iterator rewrites obscure them.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod commutator;
pub mod congruence;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod lattice;
pub mod partition;
pub mod report;
pub mod reticulation;
pub mod spectrum;
pub mod structure;
pub mod summary;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
