use crate::graph::{Graph, VertexSet};

/// A maximum clique, found by branch and bound with greedy-colouring bounds.
/// Ties resolve to the first clique met in the search order, which is
/// deterministic.
pub fn max_clique(g: &Graph) -> VertexSet {
    max_clique_in(g, &g.vertices())
}

/// A maximum clique of `G[within]`.
pub fn max_clique_in(g: &Graph, within: &VertexSet) -> VertexSet {
    let adj: Vec<VertexSet> = (0..g.n()).map(|v| g.neighbours(v).clone()).collect();
    search(&adj, within)
}

pub fn max_stable(g: &Graph) -> VertexSet {
    max_stable_in(g, &g.vertices())
}

/// A maximum stable set of `G[within]`.
pub fn max_stable_in(g: &Graph, within: &VertexSet) -> VertexSet {
    let mut adj = vec![VertexSet::new(); g.n()];
    for v in within {
        let mut s = within.difference(g.neighbours(v));
        s.remove(v);
        adj[v] = s;
    }
    search(&adj, within)
}

fn search(adj: &[VertexSet], within: &VertexSet) -> VertexSet {
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(adj, &mut current, within.clone(), &mut best);
    best.into_iter().collect()
}

/// Greedy sequential colouring of `p`. Returns vertices in colour order with
/// the colour number (1-based) of each, non-decreasing.
fn colour_sort(adj: &[VertexSet], p: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(p.len());
    let mut bounds = Vec::with_capacity(p.len());
    let mut uncoloured = p.clone();
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncoloured.remove(v);
            order.push(v);
            bounds.push(colour);
        }
    }
    (order, bounds)
}

fn expand(adj: &[VertexSet], current: &mut Vec<usize>, mut p: VertexSet, best: &mut Vec<usize>) {
    let (order, bounds) = colour_sort(adj, &p);
    for i in (0..order.len()).rev() {
        if current.len() + bounds[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let next = p.intersection(&adj[v]);
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(adj, current, next, best);
        }
        current.pop();
        p.remove(v);
    }
}
