//! Exact algorithms for graph problems parameterized by a hub: a vertex set
//! whose removal leaves small components with few hub neighbours.
//!
//! The crate covers coloring variants (plain, list, vertex and edge
//! deletion), CSPs with wildcard values, Max-CSP tooling, set cover, packing
//! and partition reductions, triangle packing, edge-deletion gadgets and
//! dominating set, each paired with an exhaustive oracle.

pub mod coloring;
pub mod domset;
pub mod error;
pub mod gadget;
pub mod gen;
pub mod graph;
pub mod hub;
pub mod lists;
pub mod maxcsp;
pub mod minsum;
pub mod selfcheck;
pub mod setsys;
pub mod triangle;
pub mod wildcard;

pub use error::{Error, Result};
