//! Finite symmetric digraphs and their symmetry.
//!
//! `sethom` builds the named symmetric digraphs (s-digraphs) of the finite
//! set-homogeneous classification, computes their automorphism groups and
//! orbits on subsets and tuples, and decides set-homogeneity,
//! k-set-homogeneity, k-homogeneity and homogeneity with concrete witnesses.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the companion `sethom-cli` crate.
//!
//! Module map:
//!
//! * [`digraph`]: pair-state matrix, neighbourhoods, complements, products,
//!   induced substructures, congruences.
//! * [`catalog`]: constructors for every named digraph and a small expression
//!   language over them.
//! * [`perm`]: permutations, stabilizer chains, orbits, orbitals.
//! * [`iso`]: canonical forms, isomorphism, automorphism groups.
//! * [`homo`]: the homogeneity predicates and subset-orbit catalogues.
//! * [`enumeration`]: isomorph-free generation at small order and the
//!   classification cross-check.
//! * [`infinite`]: finite samples of the circular a-digraph `T(4)` and the
//!   rational a-digraphs `R_n`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod digraph;
pub mod enumeration;
mod error;
pub mod homo;
pub mod infinite;
pub mod iso;
pub mod perm;

pub use catalog::{build, parse_expr, theorem_list, CatalogExpr};
pub use digraph::{PairState, SDigraph, VertexSet};
pub use error::{Error, Result};
pub use homo::{HomogeneityVerdict, SubsetOrbitCatalog};
pub use iso::{automorphism_group, canonical_form, find_isomorphism, CanonicalForm};
pub use perm::{PermGroup, Permutation};
