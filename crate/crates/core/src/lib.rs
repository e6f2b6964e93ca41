//! Superextensions of finite semigroups.
//!
//! The crate is organised bottom-up:
//!
//! - [`setfam`]: subsets of a small ground set, maximal linked families and
//!   their enumeration;
//! - [`semigroup`]: multiplication tables, monogenic semigroups, ideals,
//!   permutation groups and the automorphism/isomorphism search;
//! - [`superext`]: the superextension `λ(S)` as a multiplication table, induced
//!   homomorphisms, multiplication shifts and element names;
//! - [`shifts`]: good shifts, auto-shifts, the kernel subgroup and the
//!   restriction operator onto the image of a shift;
//! - [`report`]: the bundled catalog of expected results and the summary table.

pub mod error;
pub mod report;
pub mod semigroup;
pub mod setfam;
pub mod shifts;
pub mod superext;

pub use error::{Error, Result};
