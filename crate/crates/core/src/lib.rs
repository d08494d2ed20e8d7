//! Finitely presented groups, coset enumeration and string C-group
//! certification for rank-3 regular polytopes of order `2ⁿp`.

pub mod coset;
pub mod families;
pub mod fpcore;
pub mod perm;
pub mod sggi;
pub mod snf;
pub mod text;
pub mod verify;

pub use coset::{enumerate, CosetError, CosetTable, EnumerationLimits};
pub use fpcore::{FpError, GeneratorMap, Letter, Presentation, Word};
pub use perm::{Permutation, PermutationGroup};
