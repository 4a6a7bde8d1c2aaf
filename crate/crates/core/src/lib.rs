//! Exact computations with symmetric-group modules arising from free Filippov
//! n-algebras: Specht modules and their presentations, tree Specht modules,
//! and the multilinear components of the free algebra.

pub mod characters;
pub mod combinatorics;
pub mod error;
pub mod filippov;
pub mod linalg;
pub mod module;
pub mod perm;
pub mod specht;
pub mod tabloid;
pub mod tree_specht;
pub mod verify;

pub use error::{Error, Result};
