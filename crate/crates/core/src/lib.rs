//! Finite permutation-group computations around split extensions: automorphism
//! groups and complements of `Inn(F)`, composition structure, Lie-type
//! aut-split criteria, and finite-level liens with their splitting tests.

pub mod autsplit;
pub mod catalog;
pub mod control;
pub mod error;
pub mod lien;
pub mod lietype;
pub mod perm;
pub mod permgroup;
pub mod report;
pub mod structure;

pub use autsplit::{AutCoord, AutData, OuterClass};
pub use control::SearchControl;
pub use error::{GroupError, Result};
pub use perm::Permutation;
pub use permgroup::{ElementTable, GroupHom, PermGroup};
