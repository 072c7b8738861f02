use super::sequence::TemplateSequence;
use crate::error::{precondition, Result};
use crate::graph::{validate_colouring, Colouring, Graph, GraphBuilder};
use crate::oracles::colour_greedy;

/// Colours `G[U]` by pairing each template's own colouring with a greedy
/// colouring of the edges between different attachment sets.
///
/// `inner[i]` colours `G[P_i]`, indexed by the members of `P_i` in
/// increasing order; the result is indexed the same way by `U`. Needs every
/// vertex to have fewer than `degree_bound` neighbours in other sets.
pub fn product_colouring(
    g: &Graph,
    seq: &TemplateSequence,
    inner: &[Colouring],
    degree_bound: usize,
) -> Result<Colouring> {
    if inner.len() != seq.len() {
        return precondition(format!("{} inner colourings for {} templates", inner.len(), seq.len()));
    }
    let u = seq.support();
    let (gu, map) = g.induced_subgraph(&u)?;
    let mut pos = vec![usize::MAX; g.n()];
    for (k, &v) in map.iter().enumerate() {
        pos[v] = k;
    }
    let mut first = vec![0; map.len()];
    let mut owner = vec![0; map.len()];
    let mut width = 1;
    for (i, (e, c)) in seq.entries.iter().zip(inner).enumerate() {
        let (gp, pmap) = g.induced_subgraph(&e.p)?;
        if c.assignment.len() != pmap.len() {
            return precondition(format!("inner colouring {i} has the wrong length"));
        }
        if let Some((a, b)) = validate_colouring(&gp, c)? {
            return precondition(format!("inner colouring {i} clashes on {}-{}", pmap[a], pmap[b]));
        }
        width = width.max(c.num_colours);
        for (k, &v) in pmap.iter().enumerate() {
            first[pos[v]] = c.assignment[k];
            owner[pos[v]] = i;
        }
    }
    let mut cross = GraphBuilder::new(map.len())?;
    for (a, b) in gu.edges() {
        if owner[a] != owner[b] {
            cross.add_edge(a, b)?;
        }
    }
    let cross = cross.build();
    if let Some(v) = (0..cross.n()).find(|&v| cross.degree(v) >= degree_bound) {
        return precondition(format!(
            "vertex {} has {} neighbours in other sets, bound {degree_bound}",
            map[v],
            cross.degree(v)
        ));
    }
    let layer = colour_greedy(&cross);
    let assignment = (0..map.len())
        .map(|k| layer.assignment[k] * width + first[k])
        .collect();
    Ok(Colouring::new(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use crate::templates::core::Core;
    use crate::templates::sequence::Template;

    fn two(extra: &[(usize, usize)]) -> (Graph, TemplateSequence) {
        let mut b = GraphBuilder::new(8).unwrap();
        for base in [0, 4] {
            for x in base..base + 2 {
                for y in base + 2..base + 4 {
                    b.add_edge(x, y).unwrap();
                }
            }
        }
        for &(u, v) in extra {
            b.add_edge(u, v).unwrap();
        }
        let g = b.build();
        let mut seq = TemplateSequence::new(2, 1, 2, 2);
        for (index, base) in [0usize, 4].into_iter().enumerate() {
            let core = Core {
                parts: vec![VertexSet::range(base, base + 2), VertexSet::range(base + 2, base + 4)],
                stable: true,
            };
            let p = core.vertices();
            seq.entries.push(Template { index, core, p });
        }
        (g, seq)
    }

    fn bip() -> Colouring {
        Colouring::new(vec![0, 0, 1, 1])
    }

    #[test]
    fn no_cross_edges_keeps_inner() {
        let (g, seq) = two(&[]);
        let c = product_colouring(&g, &seq, &[bip(), bip()], 192).unwrap();
        assert_eq!(c.num_colours, 2);
        assert!(validate_colouring(&g, &c).unwrap().is_none());
    }

    #[test]
    fn cross_edges_need_a_second_layer() {
        let (g, seq) = two(&[(0, 4), (2, 6)]);
        let c = product_colouring(&g, &seq, &[bip(), bip()], 192).unwrap();
        assert!(validate_colouring(&g, &c).unwrap().is_none());
        assert!(c.num_colours <= 2 * 192);
        assert!(product_colouring(&g, &seq, &[bip(), bip()], 1).is_err());
        let bad = Colouring::new(vec![0, 0, 0, 1]);
        assert!(product_colouring(&g, &seq, &[bad, bip()], 192).is_err());
    }
}
