//! Flag-transitive Steiner quadruple systems: finite fields, permutation
//! groups, design constructions, orbit-matrix search and the arithmetic
//! screening of the 2-transitive groups.

pub mod cli;
pub mod constructs;
pub mod designs;
pub mod field;
pub mod groups;
pub mod kmsearch;
pub mod perm;
pub mod screen;
