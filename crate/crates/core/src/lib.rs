//! Exact construction and certification of a pair of non-commutative rank-8
//! association schemes built from a doubly regular tournament.

pub mod algebra;
pub mod character;
pub mod construct;
pub mod dihedral;
pub mod format;
pub mod gauss;
pub mod linalg;
pub mod rank3;
pub mod report;
pub mod scheme;
