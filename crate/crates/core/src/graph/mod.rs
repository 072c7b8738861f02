//! Undirected simple graphs on dense vertex indices, plus the small amount of
//! directed-graph and colouring plumbing the rest of the crate shares.

mod bitset;
mod colouring;
mod digraph;
pub mod families;
pub mod gen;
pub mod io;

pub use bitset::VertexSet;
pub use colouring::{validate_colouring, Colouring};
pub use digraph::Digraph;
pub use families::build_spider;

use crate::error::{input, Result};

/// Largest vertex count accepted by any constructor.
pub const MAX_VERTICES: usize = 1 << 16;

/// An immutable undirected simple graph on vertices `0..n`.
///
/// Adjacency is symmetric and irreflexive; both are enforced by every
/// constructor.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    name: Option<String>,
}

impl Graph {
    /// Builds the symmetric closure of `edges` on `n` vertices. Duplicate and
    /// reversed pairs collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Result<Graph> {
        Ok(GraphBuilder::new(n)?.build())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.adj[u].above(u).iter().map(|v| (u, v)));
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let full = VertexSet::full(n);
        let adj = (0..n)
            .map(|v| {
                let mut s = full.difference(&self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        Graph {
            adj,
            name: self.name.as_ref().map(|s| format!("complement({s})")),
        }
    }

    /// Errors if any member of `set` is not a vertex.
    pub fn check_members(&self, set: &VertexSet) -> Result<()> {
        match set.last() {
            Some(v) if v >= self.n() => input(format!(
                "vertex {v} out of range for graph on {} vertices",
                self.n()
            )),
            _ => Ok(()),
        }
    }

    /// `G[S]`. Vertex `i` of the result is the `i`-th smallest member of `S`;
    /// the returned map lifts result indices back to `G`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_members(set)?;
        let map = set.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| self.adj[v].intersection(set).iter().map(|u| index[u]).collect())
            .collect();
        Ok((Graph { adj, name: None }, map))
    }

    pub fn is_stable(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let k = set.len();
        set.iter().all(|v| self.adj[v].intersection_len(set) == k - 1)
    }

    /// `v` is adjacent to every member of `set` other than itself.
    pub fn is_complete_to(&self, v: usize, set: &VertexSet) -> bool {
        let mut rest = set.clone();
        rest.remove(v);
        rest.is_subset(&self.adj[v])
    }

    pub fn is_anticomplete_to(&self, v: usize, set: &VertexSet) -> bool {
        self.adj[v].is_disjoint(set)
    }

    /// Every vertex of `a` is adjacent to every vertex of `b`. Expects
    /// disjoint sets.
    pub fn sets_complete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(&self.adj[v]))
    }

    pub fn sets_anticomplete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| self.adj[v].is_disjoint(b))
    }

    /// Neighbours of `v` inside `set`.
    pub fn neighbours_in(&self, v: usize, set: &VertexSet) -> usize {
        self.adj[v].intersection_len(set)
    }

    /// Non-neighbours of `v` inside `set`, not counting `v` itself.
    pub fn non_neighbours_in(&self, v: usize, set: &VertexSet) -> usize {
        set.len() - self.neighbours_in(v, set) - usize::from(set.contains(v))
    }

    /// Vertices adjacent to every member of `set` (members excluded).
    pub fn common_neighbourhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::full(self.n());
        for v in set {
            out.intersect_with(&self.adj[v]);
        }
        out.difference_with(set);
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .field("name", &self.name)
            .finish()
    }
}

/// Incremental edge insertion with range and loop checks.
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
    name: Option<String>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<GraphBuilder> {
        if n > MAX_VERTICES {
            return input(format!("{n} vertices exceeds the cap of {MAX_VERTICES}"));
        }
        Ok(GraphBuilder {
            adj: vec![VertexSet::with_universe(n); n],
            name: None,
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        let n = self.n();
        if u >= n || v >= n {
            return input(format!("edge ({u}, {v}) out of range for {n} vertices"));
        }
        if u == v {
            return input(format!("self-loop at vertex {u}"));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(self)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n() && v < self.n() {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn name(&mut self, name: impl Into<String>) -> &mut Self {
        self.name = Some(name.into());
        self
    }

    pub fn build(self) -> Graph {
        Graph {
            adj: self.adj,
            name: self.name,
        }
    }
}
