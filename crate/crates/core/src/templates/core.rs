use serde::{Deserialize, Serialize};

use crate::bounds::{saturate, thresholds};
use crate::error::{input, precondition, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracles::{chromatic_number_of, find_core_in, Budget};

/// `d` disjoint, pairwise-complete parts of equal size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Core {
    pub parts: Vec<VertexSet>,
    pub stable: bool,
}

impl Core {
    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn w(&self) -> usize {
        self.parts.first().map_or(0, VertexSet::len)
    }

    pub fn vertices(&self) -> VertexSet {
        self.parts.iter().fold(VertexSet::new(), |acc, p| acc.union(p))
    }

    pub fn validate(&self, g: &Graph, w: usize) -> Result<(), String> {
        let mut seen = VertexSet::new();
        for (i, p) in self.parts.iter().enumerate() {
            if p.len() != w {
                return Err(format!("part {i} has {} vertices, expected {w}", p.len()));
            }
            if p.last().is_some_and(|v| v >= g.n()) {
                return Err(format!("part {i} leaves the vertex range"));
            }
            if !seen.is_disjoint(p) {
                return Err(format!("part {i} overlaps an earlier part"));
            }
            seen.union_with(p);
            if self.stable && !g.is_stable(p) {
                return Err(format!("part {i} is not stable"));
            }
        }
        for i in 0..self.parts.len() {
            for j in i + 1..self.parts.len() {
                if !g.sets_complete(&self.parts[i], &self.parts[j]) {
                    return Err(format!("parts {i} and {j} are not complete"));
                }
            }
        }
        Ok(())
    }
}

/// A `(w, d)`-core avoiding `forbidden`, least in the search order.
pub fn find_core(g: &Graph, w: usize, d: usize, forbidden: &VertexSet) -> Result<Option<Core>> {
    if w < 1 || d < 1 {
        return input("find_core needs w, d >= 1");
    }
    let allowed = g.vertices().difference(forbidden);
    Ok(find_core_in(g, w, d, &allowed, false).map(|parts| Core { parts, stable: false }))
}

/// Shrinks each part to `w` vertices of a largest colour class of an exact
/// colouring of that part.
pub fn stabilize_core(g: &Graph, raw: &Core, w: usize, budget: Budget) -> Result<Option<Core>> {
    if let Some((i, _)) = raw.parts.iter().enumerate().find(|(_, p)| p.len() < w) {
        return precondition(format!("part {i} is smaller than w = {w}"));
    }
    let mut parts = Vec::with_capacity(raw.d());
    for p in &raw.parts {
        if p.len() == w && g.is_stable(p) {
            parts.push(p.clone());
            continue;
        }
        let (_, colouring) = chromatic_number_of(g, p, budget)?;
        let members = p.to_vec();
        let best = colouring
            .classes()
            .into_iter()
            .max_by_key(|c| (c.len(), std::cmp::Reverse(c.first().copied())))
            .unwrap_or_default();
        if best.len() < w {
            return Ok(None);
        }
        parts.push(best.iter().take(w).map(|&k| members[k]).collect());
    }
    Ok(Some(Core { parts, stable: true }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttachMode {
    Template,
    Dense,
}

/// Whether `v` meets the template attachment predicate for `core`.
pub fn attaches(g: &Graph, core: &Core, v: usize, s: usize, t: usize, w: usize) -> bool {
    let nbrs = saturate(&thresholds::attach_nbrs(s, t));
    let non = saturate(&thresholds::attach_non_nbrs(w, t));
    core.parts.iter().any(|p| g.neighbours_in(v, p) >= nbrs)
        && core.parts.iter().any(|p| g.non_neighbours_in(v, p) >= non)
}

/// `V(C)` together with the vertices of `pool` that attach to `core`.
pub fn attachment_set(
    g: &Graph,
    core: &Core,
    s: usize,
    t: usize,
    w: usize,
    pool: &VertexSet,
    mode: AttachMode,
) -> Result<VertexSet> {
    if t < 1 || s < 1 {
        return input("attachment needs s, t >= 1");
    }
    g.check_members(pool)?;
    if mode == AttachMode::Dense && !core.parts.iter().all(|p| g.is_stable(p)) {
        return precondition("dense attachment needs a stable core");
    }
    let vc = core.vertices();
    let dense = saturate(&thresholds::dense_nbrs(s, t));
    let mut out = vc.clone();
    for v in pool.difference(&vc).iter() {
        let keep = match mode {
            AttachMode::Template => attaches(g, core, v, s, t, w),
            AttachMode::Dense => {
                core.parts.iter().any(|p| g.neighbours_in(v, p) >= dense)
                    && g.neighbours_in(v, &vc) < vc.len()
            }
        };
        if keep {
            out.insert(v);
        }
    }
    Ok(out)
}
