use super::VertexSet;
use crate::error::{input, Result};

/// Directed graph without self-loops. Antiparallel pairs are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<VertexSet>,
}

impl Digraph {
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Digraph> {
        let mut d = Digraph::empty(n);
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn empty(n: usize) -> Digraph {
        Digraph {
            out: vec![VertexSet::with_universe(n); n],
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return input(format!("arc ({u}, {v}) out of range for {n} vertices"));
        }
        if u == v {
            return input(format!("self-loop at vertex {u}"));
        }
        self.out[u].insert(v);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbours(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n()).map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    /// Vertex attaining the maximum out-degree (least index on ties).
    pub fn argmax_out_degree(&self) -> Option<usize> {
        (0..self.n()).max_by_key(|&v| (self.out_degree(v), std::cmp::Reverse(v)))
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.out[u].iter().map(move |v| (u, v)))
            .collect()
    }

    /// Neighbour sets of the underlying undirected graph.
    pub fn underlying(&self) -> Vec<VertexSet> {
        let mut und = self.out.clone();
        for (u, v) in self.arcs() {
            und[v].insert(u);
        }
        und
    }
}
