use serde::{Deserialize, Serialize};

use super::dicolour::dicolour;
use super::nice::{dense_target, first_violation, Violation};
use super::sequence::TemplateSequence;
use crate::bounds::{below, big, pow, thresholds};
use crate::error::{input, precondition, Error, Result};
use crate::graph::{build_spider, Digraph, Graph, VertexSet};
use crate::oracles::{max_clique_in, max_stable_in, Embedding, TauWitness};
use crate::ramsey::{ramsey_extract_in, Kind};

/// An induced `H_s` found while trying to upgrade a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HsWitness {
    pub embedding: Embedding,
    /// Niceness level whose upgrade produced the spider.
    pub target: u8,
    /// Sequence positions the arms were drawn from.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Upgrade {
    Holds,
    Witness(HsWitness),
}

/// Cap on the exhaustive fallback for pairwise non-adjacent picks.
const PICK_NODES: u64 = 2_000_000;

/// Either `seq` is already `target`-nice, or the failed clause is turned
/// into an induced `H_s` by the construction for that level.
///
/// Needs `seq` to be `(target − 1)`-nice. Below the width floor a failed
/// clause gives [`Error::Indeterminate`]; so does a construction that stalls,
/// which the counting rules out whenever `t > τ_{d+1}(G)`.
pub fn upgrade_witness(g: &Graph, seq: &TemplateSequence, target: u8) -> Result<Upgrade> {
    if ![2, 4, 6, 7].contains(&target) {
        return input(format!("no upgrade to level {target}"));
    }
    if let Err(m) = seq.validate(g) {
        return precondition(format!("not a template sequence: {m}"));
    }
    if let Some(v) = first_violation(g, seq, target - 1) {
        return precondition(format!("upgrade to {target} needs a {}-nice sequence: {v:?}", target - 1));
    }
    let Some(violation) = first_violation(g, seq, target) else {
        return Ok(Upgrade::Holds);
    };
    let floor = thresholds::upgrade_floor(target, seq.s, seq.t);
    if below(seq.w, &floor) {
        return Err(Error::Indeterminate(format!(
            "w = {} is below the floor {floor} for level {target}; clause fails: {violation:?}",
            seq.w
        )));
    }
    let b = Builder { g, seq, lim_s: seq.s };
    let found = match (&violation, target) {
        (Violation::Heavy { v, indices }, 2) => b.target2(*v, indices),
        (Violation::CoreContacts { v, .. }, 4) => b.target4(*v)?,
        (Violation::SetContacts { v, .. }, 6) => b.target6(*v)?,
        (Violation::DenseTargets { i, .. }, 7) => b.target7(*i)?,
        _ => None,
    };
    let Some((embedding, indices)) = found else {
        return Err(Error::Indeterminate(format!(
            "level {target} construction stalled on {violation:?}"
        )));
    };
    let h = build_spider(seq.s)?;
    if let Err(m) = embedding.validate_induced(g, &h) {
        return crate::error::internal(format!("level {target} spider failed validation: {m}"));
    }
    Ok(Upgrade::Witness(HsWitness { embedding, target, indices }))
}

type Found = Option<(Embedding, Vec<usize>)>;

struct Builder<'a> {
    g: &'a Graph,
    seq: &'a TemplateSequence,
    lim_s: usize,
}

fn spider(s: usize, centre: usize, arms: &[(usize, Vec<usize>)]) -> Embedding {
    let mut mapping = vec![0; 1 + s + s * s];
    mapping[0] = centre;
    for (k, (a, leaves)) in arms.iter().enumerate() {
        mapping[k + 1] = *a;
        for (j, &l) in leaves.iter().enumerate() {
            mapping[crate::graph::families::spider_leaf(s, k + 1, j)] = l;
        }
    }
    Embedding { mapping }
}

impl Builder<'_> {
    fn closed(&self, x: &VertexSet) -> VertexSet {
        let mut out = x.clone();
        for u in x.iter() {
            out.union_with(self.g.neighbours(u));
        }
        out
    }

    /// `v` is heavy towards the cores at `indices`: arms `a_i` in a heavy
    /// part `A_i`, leaves `Y_i` in another part `B_i`, built from the last
    /// index down so each choice avoids everything chosen after it.
    fn target2(&self, v: usize, indices: &[usize]) -> Found {
        let (g, s) = (self.g, self.lim_s);
        let lim = self.seq.limits();
        let mut x = VertexSet::new();
        let mut arms = Vec::with_capacity(s);
        for &i in indices.iter().rev() {
            let parts = &self.seq.entries[i].core.parts;
            let blocked = self.closed(&x);
            let mut done = false;
            'pairs: for a_part in parts.iter().filter(|p| g.neighbours_in(v, p) >= lim.heavy) {
                for b_part in parts.iter().filter(|p| *p != a_part && g.non_neighbours_in(v, p) >= lim.attach_non) {
                    let Some(a) = a_part.intersection(g.neighbours(v)).difference(&blocked).first() else {
                        continue;
                    };
                    let ys = b_part.difference(g.neighbours(v)).difference(&blocked);
                    if ys.len() < s {
                        continue;
                    }
                    let ys = ys.take(s);
                    x.insert(a);
                    x.union_with(&ys);
                    arms.push((a, ys.to_vec()));
                    done = true;
                    break 'pairs;
                }
            }
            if !done {
                return None;
            }
        }
        arms.reverse();
        Some((spider(s, v, &arms), indices.to_vec()))
    }

    /// `v` meets `(dt)^s` cores of templates it is not in. Pairwise
    /// non-adjacent contacts `a_i` on `s` of them, then leaves in a part of
    /// `C_i` away from `a_i`.
    fn target4(&self, v: usize) -> Result<Found> {
        let (g, seq, s) = (self.g, self.seq, self.lim_s);
        let cands: Vec<(usize, Vec<usize>)> = (0..seq.len())
            .filter(|&i| !seq.entries[i].p.contains(v))
            .map(|i| (i, seq.entries[i].core.vertices().intersection(g.neighbours(v)).to_vec()))
            .filter(|(_, o)| !o.is_empty())
            .collect();
        let Some(picks) = stable_picks(g, seq.d, seq.t, s, &cands)? else {
            return Ok(None);
        };
        let pins: VertexSet = picks.iter().map(|&(_, a)| a).collect();
        let mut x = VertexSet::new();
        let mut arms = Vec::with_capacity(s);
        for &(i, a) in picks.iter().rev() {
            let others = self.closed(&pins.difference(&VertexSet::singleton(a)));
            let blocked = self.closed(&x).union(&others).union(g.neighbours(v));
            let Some(ys) = seq.entries[i]
                .core
                .parts
                .iter()
                .filter(|p| !p.contains(a))
                .map(|p| p.difference(&blocked))
                .find(|p| p.len() >= s)
            else {
                return Ok(None);
            };
            let ys = ys.take(s);
            x.union_with(&ys);
            arms.push((a, ys.to_vec()));
        }
        arms.reverse();
        Ok(Some((spider(s, v, &arms), picks.iter().map(|p| p.0).collect())))
    }

    /// `v` meets many attachment sets it is not in. On indices where it
    /// misses the core, take a neighbour `a_i ∈ P_i`, split off a class where
    /// no `a_i` meets another core, choose non-adjacent pins, and hang `s`
    /// core neighbours of each pin in one part.
    fn target6(&self, v: usize) -> Result<Found> {
        let (g, seq, s) = (self.g, self.seq, self.lim_s);
        let i1: Vec<(usize, usize)> = (0..seq.len())
            .filter_map(|i| {
                let e = &seq.entries[i];
                if e.p.contains(v) || g.neighbours_in(v, &e.core.vertices()) > 0 {
                    return None;
                }
                e.p.intersection(g.neighbours(v)).first().map(|a| (i, a))
            })
            .collect();
        let cores: Vec<VertexSet> = i1.iter().map(|&(i, _)| seq.entries[i].core.vertices()).collect();
        let dg = arc_digraph(i1.len(), |x, y| !g.neighbours(i1[x].1).is_disjoint(&cores[y]))?;
        for class in classes_by_size(&dg)? {
            let cands: Vec<(usize, Vec<usize>)> = class.iter().map(|k| (k, vec![i1[k].1])).collect();
            let Some(picks) = stable_picks(g, seq.d, seq.t, s, &cands)? else {
                continue;
            };
            let mut arms = Vec::with_capacity(s);
            for &(k, a) in &picks {
                let core = &seq.entries[i1[k].0].core;
                let Some(part) = core
                    .parts
                    .iter()
                    .map(|p| p.intersection(g.neighbours(a)))
                    .find(|p| p.len() >= s)
                else {
                    return Ok(None);
                };
                arms.push((a, part.take(s).to_vec()));
            }
            let indices = picks.iter().map(|&(k, _)| i1[k].0).collect();
            return Ok(Some((spider(s, v, &arms), indices)));
        }
        Ok(None)
    }

    /// Template `h` sends dense edges to many attachment sets. Pins
    /// `a_i ∈ P_h`, a common core neighbour `c` of the pins that misses
    /// their targets, stable fans `Y_i ⊆ P_i ∩ N(a_i)`, then classes that
    /// keep fans and pins apart.
    fn target7(&self, h: usize) -> Result<Found> {
        let (g, seq, s) = (self.g, self.seq, self.lim_s);
        let lim = seq.limits();
        let i1: Vec<(usize, usize)> = (0..seq.len())
            .filter(|&j| j != h)
            .filter_map(|j| dense_target(g, seq, h, j, lim.dt_s).map(|a| (j, a)))
            .collect();
        let d1 = arc_digraph(i1.len(), |x, y| !g.neighbours(i1[x].1).is_disjoint(&seq.entries[i1[y].0].p))?;
        let core_h = seq.entries[h].core.vertices();
        for class in classes_by_size(&d1)? {
            let i3: Vec<usize> = class.iter().filter(|&k| !core_h.contains(i1[k].1)).collect();
            let mut centres: Vec<(usize, usize)> = core_h
                .iter()
                .map(|c| (i3.iter().filter(|&&k| g.is_adjacent(c, i1[k].1)).count(), c))
                .filter(|&(n, _)| n >= s)
                .collect();
            centres.sort_by_key(|&(n, c)| (std::cmp::Reverse(n), c));
            for (_, c) in centres {
                let i5: Vec<usize> = i3
                    .iter()
                    .copied()
                    .filter(|&k| g.is_adjacent(c, i1[k].1) && g.neighbours(c).is_disjoint(&seq.entries[i1[k].0].p))
                    .collect();
                let mut fans = Vec::new();
                for &k in &i5 {
                    let (j, a) = i1[k];
                    let pool = seq.entries[j].p.intersection(g.neighbours(a));
                    if let Some(y) = stable_in(g, &pool, seq.d, seq.t, s)? {
                        fans.push((k, a, y));
                    }
                }
                let d2 = arc_digraph(fans.len(), |x, y| {
                    fans[x].2.iter().any(|u| !g.neighbours(u).is_disjoint(&fans[y].2))
                })?;
                for class2 in classes_by_size(&d2)? {
                    let cands: Vec<(usize, Vec<usize>)> = class2.iter().map(|m| (m, vec![fans[m].1])).collect();
                    let Some(picks) = stable_picks(g, seq.d, seq.t, s, &cands)? else {
                        continue;
                    };
                    let arms: Vec<(usize, Vec<usize>)> =
                        picks.iter().map(|&(m, a)| (a, fans[m].2.to_vec())).collect();
                    let indices = picks.iter().map(|&(m, _)| i1[fans[m].0].0).collect();
                    return Ok(Some((spider(s, c, &arms), indices)));
                }
            }
        }
        Ok(None)
    }
}

fn arc_digraph(n: usize, arc: impl Fn(usize, usize) -> bool) -> Result<Digraph> {
    let mut dg = Digraph::empty(n);
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            if arc(x, y) {
                dg.add_arc(x, y)?;
            }
        }
    }
    Ok(dg)
}

/// Dicolour classes, largest first.
fn classes_by_size(dg: &Digraph) -> Result<Vec<VertexSet>> {
    let mut classes = dicolour(dg, dg.max_out_degree())?;
    classes.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.first()));
    Ok(classes)
}

fn clique_witness(clique: &VertexSet, d: usize, t: usize) -> TauWitness {
    let v = clique.to_vec();
    TauWitness {
        t,
        parts: (0..=d).map(|k| v[k * t..(k + 1) * t].iter().copied().collect()).collect(),
    }
}

/// Stable `s`-subset of `pool`: Ramsey with `x = dt` when `pool` is large
/// enough, then exhaustive search. A clique of `(d + 1)t` refutes `τ`.
fn stable_in(g: &Graph, pool: &VertexSet, d: usize, t: usize, s: usize) -> Result<Option<VertexSet>> {
    let x = d * t;
    if x >= 2 && !below(pool.len(), &pow(&big(x), s)) {
        let r = ramsey_extract_in(g, pool, x, s)?;
        if r.kind == Kind::Stable {
            return Ok(Some(r.members));
        }
    }
    let clique = max_clique_in(g, pool);
    if clique.len() >= (d + 1) * t {
        return Err(Error::TauRefuted(clique_witness(&clique, d, t)));
    }
    let st = max_stable_in(g, pool);
    Ok((st.len() >= s).then(|| st.take(s)))
}

/// `s` of the candidate indices with one option each, pairwise distinct and
/// non-adjacent. First options go through Ramsey (`x = dt`); a clique answer
/// falls back to exhaustive search.
fn stable_picks(
    g: &Graph,
    d: usize,
    t: usize,
    s: usize,
    cands: &[(usize, Vec<usize>)],
) -> Result<Option<Vec<(usize, usize)>>> {
    let mut owner = std::collections::BTreeMap::new();
    for (k, (i, opts)) in cands.iter().enumerate() {
        if let Some(&a) = opts.first() {
            owner.entry(a).or_insert((k, *i));
        }
    }
    let firsts: VertexSet = owner.keys().copied().collect();
    if let Some(set) = stable_in(g, &firsts, d, t, s)? {
        let mut picks: Vec<(usize, usize, usize)> = set.iter().map(|a| (owner[&a].0, owner[&a].1, a)).collect();
        picks.sort_unstable();
        return Ok(Some(picks.into_iter().map(|(_, i, a)| (i, a)).collect()));
    }
    let mut chosen = Vec::with_capacity(s);
    let mut nodes = 0u64;
    Ok(pick_dfs(g, s, cands, 0, &mut chosen, &mut nodes).then_some(chosen))
}

fn pick_dfs(
    g: &Graph,
    s: usize,
    cands: &[(usize, Vec<usize>)],
    from: usize,
    chosen: &mut Vec<(usize, usize)>,
    nodes: &mut u64,
) -> bool {
    if chosen.len() == s {
        return true;
    }
    for k in from..cands.len() {
        if cands.len() - k + chosen.len() < s || *nodes > PICK_NODES {
            return false;
        }
        for &a in &cands[k].1 {
            *nodes += 1;
            if chosen.iter().any(|&(_, b)| b == a || g.is_adjacent(a, b)) {
                continue;
            }
            chosen.push((cands[k].0, a));
            if pick_dfs(g, s, cands, k + 1, chosen, nodes) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
