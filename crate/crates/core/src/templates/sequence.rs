use serde::{Deserialize, Serialize};

use super::core::{attachment_set, attaches, AttachMode, Core};
use crate::bounds::{saturate, thresholds};
use crate::error::{input, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracles::find_core_in;

/// A stable core and its attachment set. `index` is the position in the
/// sequence the template was first built in and survives splitting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub index: usize,
    pub core: Core,
    pub p: VertexSet,
}

/// Templates in index order, with the parameters they were built under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateSequence {
    pub w: usize,
    pub t: usize,
    pub s: usize,
    pub d: usize,
    pub entries: Vec<Template>,
}

/// Thresholds as machine integers. Saturation is harmless: they are only
/// compared with vertex counts.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Limits {
    pub attach_nbrs: usize,
    pub attach_non: usize,
    pub heavy: usize,
    pub dt_s: usize,
    pub six: usize,
    pub seven: usize,
    pub eight: usize,
}

impl TemplateSequence {
    pub fn new(w: usize, t: usize, s: usize, d: usize) -> TemplateSequence {
        TemplateSequence { w, t, s, d, entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `U`, the union of the attachment sets.
    pub fn support(&self) -> VertexSet {
        self.entries.iter().fold(VertexSet::new(), |acc, e| acc.union(&e.p))
    }

    /// The entries at the given positions, order kept.
    pub fn subsequence(&self, positions: &VertexSet) -> TemplateSequence {
        TemplateSequence {
            entries: positions.iter().map(|i| self.entries[i].clone()).collect(),
            ..TemplateSequence::new(self.w, self.t, self.s, self.d)
        }
    }

    /// Position owning `v`, if any.
    pub fn owner(&self, v: usize) -> Option<usize> {
        self.entries.iter().position(|e| e.p.contains(v))
    }

    pub(crate) fn limits(&self) -> Limits {
        let (w, t, s, d) = (self.w, self.t, self.s, self.d);
        Limits {
            attach_nbrs: saturate(&thresholds::attach_nbrs(s, t)),
            attach_non: saturate(&thresholds::attach_non_nbrs(w, t)),
            heavy: saturate(&thresholds::heavy_nbrs(s, t)),
            dt_s: saturate(&thresholds::dt_s(d, t, s)),
            six: saturate(&thresholds::six_count(d, t, s)),
            seven: saturate(&thresholds::seven_count(d, w, t, s)),
            eight: saturate(&thresholds::eight_degree(d, t, s)),
        }
    }

    /// Whether `v` could have been added to template `i` (position).
    pub fn attaches_to(&self, g: &Graph, i: usize, v: usize) -> bool {
        attaches(g, &self.entries[i].core, v, self.s, self.t, self.w)
    }

    /// Every template and sequence invariant.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        if self.w < 1 || self.t < 1 || self.s < 1 || self.d < 1 {
            return Err("parameters must be positive".into());
        }
        let mut seen = VertexSet::new();
        for (i, e) in self.entries.iter().enumerate() {
            if e.core.d() != self.d || !e.core.stable {
                return Err(format!("template {i}: core must be a stable {}-part core", self.d));
            }
            e.core.validate(g, self.w).map_err(|m| format!("template {i}: {m}"))?;
            if e.p.last().is_some_and(|v| v >= g.n()) {
                return Err(format!("template {i}: P leaves the vertex range"));
            }
            let vc = e.core.vertices();
            if !vc.is_subset(&e.p) {
                return Err(format!("template {i}: V(C) is not inside P"));
            }
            if let Some(v) = e.p.difference(&vc).iter().find(|&v| !self.attaches_to(g, i, v)) {
                return Err(format!("template {i}: vertex {v} of P does not attach"));
            }
            if !seen.is_disjoint(&e.p) {
                return Err(format!("template {i}: P overlaps an earlier P"));
            }
            seen.union_with(&e.p);
        }
        for j in 0..self.len() {
            for i in 0..j {
                if let Some(v) = self.entries[j].p.iter().find(|&v| self.attaches_to(g, i, v)) {
                    return Err(format!("vertex {v} of template {j} attaches to earlier template {i}"));
                }
            }
        }
        Ok(())
    }
}

/// Repeatedly takes the least stable `(w, d)`-core among unused vertices and
/// its attachment set among unused vertices. Returns the sequence and the
/// vertices left over, which contain no stable `(w, d)`-core.
pub fn build_greedy_sequence(
    g: &Graph,
    w: usize,
    t: usize,
    s: usize,
    d: usize,
) -> Result<(TemplateSequence, VertexSet)> {
    if w < 1 || t < 1 || s < 1 || d < 2 {
        return input("greedy sequence needs w, t, s >= 1 and d >= 2");
    }
    let mut seq = TemplateSequence::new(w, t, s, d);
    let mut free = g.vertices();
    while let Some(parts) = find_core_in(g, w, d, &free, true) {
        let core = Core { parts, stable: true };
        let p = attachment_set(g, &core, s, t, w, &free, AttachMode::Template)?;
        free.difference_with(&p);
        let index = seq.len();
        seq.entries.push(Template { index, core, p });
    }
    Ok((seq, free))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete_bipartite, cycle, disjoint_union};

    #[test]
    fn no_core_gives_empty_sequence() {
        let g = cycle(7).unwrap();
        let (seq, rest) = build_greedy_sequence(&g, 2, 1, 2, 2).unwrap();
        assert!(seq.is_empty());
        assert_eq!(rest, g.vertices());
        seq.validate(&g).unwrap();
    }

    #[test]
    fn two_disjoint_cores() {
        let k = complete_bipartite(3, 3).unwrap();
        let g = disjoint_union(&[k.clone(), k]).unwrap();
        let (seq, rest) = build_greedy_sequence(&g, 3, 1, 2, 2).unwrap();
        assert_eq!(seq.len(), 2);
        assert!(rest.is_empty());
        seq.validate(&g).unwrap();
        assert_eq!(seq.support(), g.vertices());
        assert_eq!(seq.owner(7), Some(1));
    }
}
