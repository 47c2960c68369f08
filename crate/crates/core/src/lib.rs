//! Finite group engine for deciding whether the derived subgroups of all
//! subgroups of a group form a chain under inclusion (the DC property).

mod bitset;
pub mod census;
pub mod constructors;
pub mod dc;
mod error;
pub mod group;
pub mod lattice;
pub mod pc;
pub mod structure;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use group::{
    make_perm_group, make_perm_group_capped, quotient_group, BackendKind, Elem, FiniteGroup,
    Permutation, Subgroup,
};
