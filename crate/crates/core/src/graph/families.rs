//! Named graph families.

use super::{Graph, GraphBuilder};
use crate::error::{input, Result};

pub fn complete(n: usize) -> Result<Graph> {
    let mut b = GraphBuilder::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            b.add_edge(u, v)?;
        }
    }
    Ok(b.build().with_name(format!("K{n}")))
}

pub fn path(n: usize) -> Result<Graph> {
    let mut b = GraphBuilder::new(n)?;
    for v in 1..n {
        b.add_edge(v - 1, v)?;
    }
    Ok(b.build().with_name(format!("P{n}")))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return input(format!("cycle needs at least 3 vertices, got {n}"));
    }
    let mut b = GraphBuilder::new(n)?;
    for v in 0..n {
        b.add_edge(v, (v + 1) % n)?;
    }
    Ok(b.build().with_name(format!("C{n}")))
}

/// Parts occupy consecutive index ranges in the given order.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    let n = parts.iter().sum();
    let mut b = GraphBuilder::new(n)?;
    let mut starts = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &p in parts {
        starts.push(acc);
        acc += p;
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for u in starts[i]..starts[i] + parts[i] {
                for v in starts[j]..starts[j] + parts[j] {
                    b.add_edge(u, v)?;
                }
            }
        }
    }
    Ok(b.build())
}

/// `K_{m,n}` with the `m`-side on `0..m`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    Ok(complete_multipartite(&[m, n])?.with_name(format!("K{m},{n}")))
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).expect("static edge list").with_name("petersen")
}

/// Disjoint union; vertices of `gs[k]` follow those of `gs[..k]`.
pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
    let n = gs.iter().map(Graph::n).sum();
    let mut b = GraphBuilder::new(n)?;
    let mut off = 0;
    for g in gs {
        for (u, v) in g.edges() {
            b.add_edge(off + u, off + v)?;
        }
        off += g.n();
    }
    Ok(b.build())
}

/// The spider `H_s`: centre `0`, neighbours `1..=s`, and the leaves of
/// neighbour `i` at `s + 1 + (i - 1) * s ..` (`s` of them).
pub fn build_spider(s: usize) -> Result<Graph> {
    if s < 1 {
        return input("spider needs s >= 1");
    }
    let n = 1 + s + s * s;
    let mut b = GraphBuilder::new(n)?;
    for i in 1..=s {
        b.add_edge(0, i)?;
        for j in 0..s {
            b.add_edge(i, spider_leaf(s, i, j))?;
        }
    }
    Ok(b.build().with_name(format!("H{s}")))
}

/// Index of the `j`-th leaf (0-based) under centre-neighbour `i` (1-based)
/// in the canonical spider layout.
pub fn spider_leaf(s: usize, i: usize, j: usize) -> usize {
    s + 1 + (i - 1) * s + j
}
