//! Permutation prisms `πG`: two copies of `G` joined by the matching
//! `u¹ – π(u)²`.
//!
//! Labelling: the copy of `v` in the first copy is `v`, in the second copy
//! `v + n`. Copy tags and the projection back to `G` are therefore plain
//! arithmetic.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::permutation::Permutation;

/// Which copy of the base graph a prism vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Copy {
    First,
    Second,
}

impl Copy {
    pub fn tag(self) -> u8 {
        match self {
            Copy::First => 1,
            Copy::Second => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PrismGraph {
    graph: Graph,
    base_order: usize,
    permutation: Permutation,
}

/// Builds `πG` on `2n` vertices.
pub fn build_prism(g: &Graph, pi: &Permutation) -> Result<PrismGraph> {
    let n = g.order();
    if pi.len() != n {
        return Err(Error::SizeMismatch {
            perm: pi.len(),
            graph: n,
        });
    }
    let mut prism = Graph::empty(2 * n)?;
    for (u, v) in g.edges() {
        prism.add_edge(u, v)?;
        prism.add_edge(u + n, v + n)?;
    }
    for u in 0..n {
        prism.add_edge(u, pi.apply(u) + n)?;
    }
    Ok(PrismGraph {
        graph: prism,
        base_order: n,
        permutation: pi.clone(),
    })
}

/// `G □ K2`, the prism for the identity permutation.
pub fn cartesian_prism(g: &Graph) -> Graph {
    build_prism(g, &Permutation::identity(g.order()))
        .expect("identity has matching size")
        .into_graph()
}

impl PrismGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn copy_of(&self, v: usize) -> Copy {
        if v < self.base_order {
            Copy::First
        } else {
            Copy::Second
        }
    }

    /// `p(v)`: the base vertex a prism vertex copies.
    pub fn project(&self, v: usize) -> usize {
        v % self.base_order
    }

    /// `v^i`.
    pub fn lift(&self, v: usize, copy: Copy) -> usize {
        match copy {
            Copy::First => v,
            Copy::Second => v + self.base_order,
        }
    }

    /// `A^i`.
    pub fn lift_set(&self, a: &VertexSet, copy: Copy) -> VertexSet {
        a.iter().map(|v| self.lift(v, copy)).collect()
    }

    /// `B^(i) = B ∩ V(G^i)`, still in prism labels.
    pub fn part(&self, b: &VertexSet, copy: Copy) -> VertexSet {
        let n = self.base_order;
        b.iter()
            .filter(|&v| match copy {
                Copy::First => v < n,
                Copy::Second => v >= n,
            })
            .collect()
    }

    /// `p(B)`.
    pub fn project_set(&self, b: &VertexSet) -> VertexSet {
        b.iter().map(|v| self.project(v)).collect()
    }

    /// The matching partner of a prism vertex in the other copy.
    pub fn cross_partner(&self, v: usize) -> usize {
        let n = self.base_order;
        if v < n {
            self.permutation.apply(v) + n
        } else {
            self.permutation.inverse().apply(v - n)
        }
    }
}
