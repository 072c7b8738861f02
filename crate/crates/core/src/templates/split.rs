use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::dicolour::dicolour;
use super::nice::{claim_q, dense_target, first_violation, q_tau_witness};
use super::sequence::TemplateSequence;
use crate::bounds::{below, big, fits, thresholds};
use crate::error::{input, internal, precondition, Error, Result};
use crate::graph::{Digraph, Graph, VertexSet};

/// The classes of one split, with the digraph statistics behind them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub stage: u8,
    pub classes: Vec<TemplateSequence>,
    pub max_out_degree: usize,
    #[serde(with = "crate::bounds::dec")]
    pub ceiling: BigUint,
}

/// `(entry, exit)` niceness of each stage. Entry 0 means any sequence.
pub fn stage_levels(stage: u8) -> Option<(u8, u8)> {
    match stage {
        1 => Some((0, 1)),
        3 => Some((2, 3)),
        5 => Some((4, 5)),
        8 => Some((7, 8)),
        _ => None,
    }
}

/// The auxiliary digraph of `stage` on sequence positions.
pub fn stage_digraph(g: &Graph, seq: &TemplateSequence, stage: u8) -> Result<Digraph> {
    let n = seq.len();
    let lim = seq.limits();
    let cores: Vec<VertexSet> = seq.entries.iter().map(|e| e.core.vertices()).collect();
    let mut dg = Digraph::empty(n);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let (ci, ej) = (&seq.entries[i].core, &seq.entries[j]);
            let arc = match stage {
                1 => ej.p.iter().any(|v| {
                    !cores[i].contains(v) && ci.parts.iter().all(|p| g.non_neighbours_in(v, p) < lim.attach_non)
                }),
                3 => cores[i]
                    .iter()
                    .any(|v| ej.core.parts.iter().any(|p| g.neighbours_in(v, p) >= lim.heavy)),
                5 => cores[i].iter().any(|v| !g.neighbours(v).is_disjoint(&cores[j])),
                8 => dense_target(g, seq, i, j, lim.dt_s.saturating_add(1)).is_some(),
                _ => return input(format!("no split at stage {stage}")),
            };
            if arc {
                dg.add_arc(i, j)?;
            }
        }
    }
    Ok(dg)
}

/// The out-degree every vertex of the stage digraph is proved to respect.
fn out_degree_ok(stage: u8, seq: &TemplateSequence, out: usize) -> bool {
    let (w, t, s, d) = (seq.w, seq.t, seq.s, seq.d);
    match stage {
        1 => out < t,
        3 => fits(out, &big(d * w * (s - 1))),
        5 => below(out, &(big(w * d) * thresholds::dt_s(d, t, s))),
        _ => below(out, &thresholds::seven_count(d, w, t, s)),
    }
}

/// Splits `seq` into subsequences, each nice at the stage's exit level.
///
/// Errors with [`Error::TauRefuted`] when the stage-1 digraph has a vertex of
/// out-degree `t` or more (its set `Q` yields a `(t, d + 1)`-core), and with
/// [`Error::Precondition`] when the entry niceness fails.
pub fn split_sequence(g: &Graph, seq: &TemplateSequence, stage: u8) -> Result<Split> {
    let Some((entry, exit)) = stage_levels(stage) else {
        return input(format!("no split at stage {stage}"));
    };
    if let Err(m) = seq.validate(g) {
        return precondition(format!("not a template sequence: {m}"));
    }
    if entry > 0 {
        if let Some(v) = first_violation(g, seq, entry) {
            return precondition(format!("stage {stage} needs a {entry}-nice sequence: {v:?}"));
        }
    }
    let ceiling = thresholds::split_ceiling(stage, seq.s, seq.d, seq.w, seq.t);
    let dg = stage_digraph(g, seq, stage)?;
    let max_out = dg.max_out_degree();
    if !out_degree_ok(stage, seq, max_out) {
        let i = dg.argmax_out_degree().expect("nonempty digraph");
        if stage == 1 {
            let core = &seq.entries[i].core;
            let q = claim_q(g, core, seq.w, seq.t);
            if let Some(wit) = q_tau_witness(g, core, &q, seq.t) {
                return Err(Error::TauRefuted(wit));
            }
        }
        return internal(format!(
            "stage {stage} digraph: template {i} has out-degree {max_out} above the proved bound"
        ));
    }
    let classes: Vec<TemplateSequence> = if seq.is_empty() {
        vec![seq.clone()]
    } else {
        dicolour(&dg, max_out)?
            .iter()
            .map(|c| seq.subsequence(c))
            .collect()
    };
    if !fits(classes.len(), &ceiling) {
        return internal(format!("stage {stage}: {} classes exceed the ceiling {ceiling}", classes.len()));
    }
    for (k, c) in classes.iter().enumerate() {
        if let Some(v) = first_violation(g, c, exit) {
            return internal(format!("stage {stage} class {k} is not {exit}-nice: {v:?}"));
        }
    }
    Ok(Split {
        stage,
        classes,
        max_out_degree: max_out,
        ceiling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::templates::core::Core;
    use crate::templates::sequence::Template;

    fn sequence_of(g: &Graph, blocks: &[usize], w: usize) -> TemplateSequence {
        let mut seq = TemplateSequence::new(w, 1, 2, 2);
        for (index, &base) in blocks.iter().enumerate() {
            let core = Core {
                parts: vec![VertexSet::range(base, base + w), VertexSet::range(base + w, base + 2 * w)],
                stable: true,
            };
            let p = core.vertices();
            seq.entries.push(Template { index, core, p });
        }
        seq.validate(g).unwrap();
        seq
    }

    fn blocks(count: usize, w: usize, extra: &[(usize, usize)]) -> Graph {
        let mut b = GraphBuilder::new(count * 2 * w).unwrap();
        for k in 0..count {
            let base = k * 2 * w;
            for x in base..base + w {
                for y in base + w..base + 2 * w {
                    b.add_edge(x, y).unwrap();
                }
            }
        }
        for &(u, v) in extra {
            b.add_edge(u, v).unwrap();
        }
        b.build()
    }

    #[test]
    fn empty_is_one_class() {
        let g = Graph::empty(2).unwrap();
        let s = split_sequence(&g, &TemplateSequence::new(2, 1, 2, 2), 1).unwrap();
        assert_eq!(s.classes.len(), 1);
        assert!(s.classes[0].is_empty());
    }

    #[test]
    fn one_nice_stays_whole() {
        let g = blocks(2, 2, &[]);
        let seq = sequence_of(&g, &[0, 4], 2);
        let s = split_sequence(&g, &seq, 1).unwrap();
        assert_eq!(s.classes, vec![seq]);
    }

    #[test]
    fn stage_five_separates_cross_edge() {
        let g = blocks(3, 2, &[(0, 4)]);
        let seq = sequence_of(&g, &[0, 4, 8], 2);
        let s = split_sequence(&g, &seq, 5).unwrap();
        assert_eq!(s.classes.len(), 2);
        for c in &s.classes {
            let idx: Vec<usize> = c.entries.iter().map(|e| e.index).collect();
            assert!(!(idx.contains(&0) && idx.contains(&1)));
        }
        assert!(split_sequence(&g, &seq, 8).is_err());
    }
}
