use crate::error::{precondition, Result};
use crate::graph::{Digraph, VertexSet};

/// Partitions `D` into at most `2d + 1` arc-free classes, given every
/// out-degree is at most `d`.
///
/// Vertices are peeled by least total degree (always `≤ 2d`), then coloured
/// greedily in the reverse order.
pub fn dicolour(dg: &Digraph, d: usize) -> Result<Vec<VertexSet>> {
    if let Some(v) = (0..dg.n()).find(|&v| dg.out_degree(v) > d) {
        return precondition(format!("vertex {v} has out-degree {} > {d}", dg.out_degree(v)));
    }
    let und = dg.underlying();
    let mut left = VertexSet::full(dg.n());
    let mut order = Vec::with_capacity(dg.n());
    while let Some(v) = left
        .iter()
        .min_by_key(|&v| (und[v].intersection_len(&left), v))
    {
        left.remove(v);
        order.push(v);
    }
    let mut colour = vec![usize::MAX; dg.n()];
    let mut classes: Vec<VertexSet> = Vec::new();
    for &v in order.iter().rev() {
        let c = (0..)
            .find(|&c| und[v].iter().all(|u| colour[u] != c))
            .expect("unbounded range");
        colour[v] = c;
        if c == classes.len() {
            classes.push(VertexSet::new());
        }
        classes[c].insert(v);
    }
    Ok(classes)
}
