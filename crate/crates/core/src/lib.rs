//! Domination in permutation prisms.
//!
//! For a graph `G` and a permutation `π` of its vertices, the prism `πG`
//! joins two copies of `G` by the matching `u¹ – π(u)²`. This crate computes
//! domination numbers exactly, finds symmetric γ-sets and decides prism
//! fixers, and builds explicit permutations `α` with `γ(αG) > γ(G)` for
//! every graph that has an edge.

pub mod adversary;
pub mod bitset;
pub mod domination;
pub mod error;
pub mod fixer;
pub mod graph;
pub mod graph6;
pub mod permutation;
pub mod prism;

pub use bitset::{VertexSet, MAX_VERTICES};
pub use error::{Error, Result};
pub use graph::Graph;
pub use graph6::{parse_graph6, write_graph6};
pub use permutation::Permutation;
pub use prism::{build_prism, PrismGraph};
