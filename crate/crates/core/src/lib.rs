//! Exact enumeration of mesh-pattern occurrences in permutations.
//!
//! The crate counts occurrences of mesh patterns over all of `S_n`, builds
//! joint distribution tables for pairs of patterns, and checks those tables
//! against independent recurrences and closed forms.

pub mod error;
pub mod perm;
pub mod mesh;
pub mod dist;
pub mod catalog;
pub mod closed_forms;
pub mod invseq;
pub mod bijections;
pub mod export;
pub mod checks;

pub use error::{Error, Result};
pub use mesh::{Cell, MeshPattern};
pub use perm::Permutation;
pub use dist::{BivarPoly, JointTable};
pub use catalog::PatternPair;
