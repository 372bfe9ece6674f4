//! Simple undirected graphs on the labels `0..n`.

use std::fmt;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// A finite simple undirected graph with vertices `0..n`.
///
/// Adjacency is kept as one bitset per vertex. The constructor paths all
/// keep it symmetric and loop-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            adj: vec![VertexSet::empty(); n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|a| a.is_empty())
    }

    /// `N(v)`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// `N[v]`. Panics if `v` is out of range.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max() {
            Some(v) if v >= self.order() => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            }),
            _ => Ok(()),
        }
    }

    /// `N(S)`, the union of open neighborhoods.
    pub fn open_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut out = VertexSet::empty();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        Ok(out)
    }

    /// `N[S] = N(S) ∪ S`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(self.cover(s))
    }

    /// Unchecked `N[S]` for hot loops; members of `s` must be in range.
    #[inline]
    pub fn cover(&self, s: &VertexSet) -> VertexSet {
        let mut out = *s;
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// Members of `s` that are pairwise non-adjacent.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        self.component_of(0).len() == n
    }

    fn component_of(&self, start: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier {
                next.union_with(&self.adj[v]);
            }
            frontier = next.difference(&seen);
            seen.union_with(&frontier);
        }
        seen
    }

    /// Subgraph induced by `keep`, relabelled `0..|keep|` in increasing
    /// order. The second value maps new labels back to labels of `self`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(keep)?;
        let back: Vec<usize> = keep.to_vec();
        let mut forward = vec![usize::MAX; self.order()];
        for (i, &v) in back.iter().enumerate() {
            forward[v] = i;
        }
        let mut sub = Graph::empty(back.len())?;
        for (i, &v) in back.iter().enumerate() {
            for w in self.adj[v].intersection(keep) {
                sub.adj[i].insert(forward[w]);
            }
        }
        Ok((sub, back))
    }

    /// Connected components ordered by their smallest vertex. Each entry
    /// pairs the relabelled component with its back-map into `self`.
    pub fn connected_components(&self) -> Vec<(Graph, Vec<usize>)> {
        let mut remaining = self.vertices();
        let mut out = Vec::new();
        while let Some(start) = remaining.min() {
            let comp = self.component_of(start);
            remaining = remaining.difference(&comp);
            out.push(
                self.induced_subgraph(&comp)
                    .expect("component vertices are in range"),
            );
        }
        out
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Small named graphs used by tests, examples and the docs.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::empty(n).unwrap()
    }

    /// `K_{1,leaves}` with the center labelled 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i–(i+5).
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    /// The 3-cube `Q3 = C4 □ K2`, vertices as 3-bit words.
    pub fn cube() -> Graph {
        let mut edges = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(8, &edges).unwrap()
    }

    /// Disjoint union, `a` first.
    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let off = a.order();
        let mut edges: Vec<_> = a.edges().collect();
        edges.extend(b.edges().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges(off + b.order(), &edges).unwrap()
    }
}
