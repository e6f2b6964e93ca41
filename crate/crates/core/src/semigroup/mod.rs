//! Finite semigroups as multiplication tables.

mod ideals;
mod monogenic;
mod perm;
mod search;
mod shape;
mod table;

pub use ideals::{ideal_chain, ideal_depth, idempotents, power_ideal};
pub use monogenic::{
    detect_monogenic, make_monogenic, max_subgroup_of_monogenic, power_label, MonogenicSpec,
};
pub use perm::{Perm, PermGroup};
pub use search::{
    automorphisms, automorphisms_with, isomorphic, isomorphic_with, AutSearch, Distinction,
    Isomorphism, SearchOptions, Structure,
};
pub(crate) use shape::decimal;
pub use shape::{
    factorial, group_shape, parse_group_key, symmetric_key, GroupShape, NamedForm, ParsedKey,
};
pub use table::{OpTable, TableJson};
