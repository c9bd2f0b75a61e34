//! Cliques with restricted intersections.
//!
//! Graph constructions for generalized Turán problems whose r-cliques form
//! an L-intersecting family, exact clique enumeration, intersection
//! predicates, the structural reductions used to bound such graphs
//! (sunflowers, atoms, quotient graphs, covering families), closed-form
//! bounds in exact arithmetic, and exhaustive small-case search.

pub mod bitset;
pub mod bounds;
pub mod canon;
pub mod clique;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod intersect;
pub mod maxclique;
pub mod repro;
pub mod search;
pub mod spec;
pub mod structure;

pub use bitset::BitSet;
pub use error::Error;
pub use family::SetFamily;
pub use graph::Graph;
pub use spec::IntersectSpec;

pub type Result<T> = std::result::Result<T, Error>;
