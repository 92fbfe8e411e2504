//! Big descents in pattern-avoiding permutations: enumeration, bijections to
//! lattice paths and binary words, exact generating functions, and
//! quasisymmetric expansions.

pub mod algebra;
pub mod bijections;
pub mod conjectures;
pub mod error;
pub mod genfun;
pub mod paths;
pub mod perm;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
pub use paths::{BinaryWord, DyckPath, TwoMotzkinPath};
pub use perm::{PatternSet, Permutation, StatName};
