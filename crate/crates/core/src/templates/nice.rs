use serde::{Deserialize, Serialize};

use super::core::Core;
use super::sequence::{Limits, TemplateSequence};
use crate::error::{input, precondition, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracles::TauWitness;

/// A failed clause. Indices are positions in the checked sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "snake_case")]
pub enum Violation {
    /// `v ∉ V(C_i)` has few non-neighbours in every part of `C_i`.
    Few { i: usize, v: usize },
    /// `v` is heavy towards `s` cores it is not in.
    Heavy { v: usize, indices: Vec<usize> },
    /// `v ∈ V(C_i)` is heavy towards `part` of `C_j`.
    CoreHeavy { i: usize, j: usize, v: usize, part: usize },
    /// `v` sees `(dt)^s` cores whose templates it is not in.
    CoreContacts { v: usize, indices: Vec<usize> },
    /// An edge `uv` with `u ∈ V(C_i)`, `v ∈ V(C_j)`.
    CrossEdge { i: usize, j: usize, u: usize, v: usize },
    /// `v` sees too many attachment sets it is not in.
    SetContacts { v: usize, indices: Vec<usize> },
    /// Too many `j` receive `(dt)^s` edges from one vertex of `P_i`.
    DenseTargets { i: usize, indices: Vec<usize> },
    /// `v ∈ P_i` has too many neighbours outside `P_i`.
    Outward { i: usize, v: usize, count: usize },
}

impl Violation {
    /// The niceness level whose own clause this breaks.
    pub fn level(&self) -> u8 {
        match self {
            Violation::Few { .. } => 1,
            Violation::Heavy { .. } => 2,
            Violation::CoreHeavy { .. } => 3,
            Violation::CoreContacts { .. } => 4,
            Violation::CrossEdge { .. } => 5,
            Violation::SetContacts { .. } => 6,
            Violation::DenseTargets { .. } => 7,
            Violation::Outward { .. } => 8,
        }
    }

    /// Re-checks the clause against `g`.
    pub fn validate(&self, g: &Graph, seq: &TemplateSequence) -> Result<(), String> {
        let lim = seq.limits();
        let n = seq.len();
        let bad_index = |i: &usize| *i >= n;
        let ok = match self {
            Violation::Few { i, v } => {
                !bad_index(i)
                    && seq.support().contains(*v)
                    && few_non_nbrs(g, &seq.entries[*i].core, *v, lim.attach_non)
            }
            Violation::Heavy { v, indices } => {
                indices.len() >= seq.s
                    && distinct(indices, n)
                    && seq.support().contains(*v)
                    && indices.iter().all(|&i| heavy_towards(g, seq, i, *v, lim))
            }
            Violation::CoreHeavy { i, j, v, part } => {
                i != j
                    && !bad_index(i)
                    && !bad_index(j)
                    && seq.entries[*i].core.vertices().contains(*v)
                    && *part < seq.entries[*j].core.d()
                    && g.neighbours_in(*v, &seq.entries[*j].core.parts[*part]) >= lim.heavy
            }
            Violation::CoreContacts { v, indices } => {
                indices.len() >= lim.dt_s
                    && distinct(indices, n)
                    && seq.support().contains(*v)
                    && indices.iter().all(|&i| core_contact(g, seq, i, *v))
            }
            Violation::CrossEdge { i, j, u, v } => {
                i != j
                    && !bad_index(i)
                    && !bad_index(j)
                    && seq.entries[*i].core.vertices().contains(*u)
                    && seq.entries[*j].core.vertices().contains(*v)
                    && g.is_adjacent(*u, *v)
            }
            Violation::SetContacts { v, indices } => {
                indices.len() >= lim.six
                    && distinct(indices, n)
                    && seq.support().contains(*v)
                    && indices.iter().all(|&i| set_contact(g, seq, i, *v))
            }
            Violation::DenseTargets { i, indices } => {
                !bad_index(i)
                    && indices.len() >= lim.seven
                    && distinct(indices, n)
                    && indices.iter().all(|&j| j != *i && dense_target(g, seq, *i, j, lim.dt_s).is_some())
            }
            Violation::Outward { i, v, count } => {
                !bad_index(i) && seq.entries[*i].p.contains(*v) && {
                    let out = seq.support().difference(&seq.entries[*i].p);
                    let c = g.neighbours_in(*v, &out);
                    c == *count && c >= lim.eight
                }
            }
        };
        if ok {
            Ok(())
        } else {
            Err(format!("violation does not hold: {self:?}"))
        }
    }
}

fn distinct(indices: &[usize], n: usize) -> bool {
    let set: VertexSet = indices.iter().copied().collect();
    set.len() == indices.len() && indices.iter().all(|&i| i < n)
}

fn few_non_nbrs(g: &Graph, core: &Core, v: usize, non: usize) -> bool {
    !core.vertices().contains(v) && core.parts.iter().all(|p| g.non_neighbours_in(v, p) < non)
}

fn heavy_towards(g: &Graph, seq: &TemplateSequence, i: usize, v: usize, lim: Limits) -> bool {
    let core = &seq.entries[i].core;
    !core.vertices().contains(v) && core.parts.iter().any(|p| g.neighbours_in(v, p) >= lim.heavy)
}

fn core_contact(g: &Graph, seq: &TemplateSequence, i: usize, v: usize) -> bool {
    let e = &seq.entries[i];
    !e.p.contains(v) && g.neighbours_in(v, &e.core.vertices()) > 0
}

fn set_contact(g: &Graph, seq: &TemplateSequence, i: usize, v: usize) -> bool {
    let e = &seq.entries[i];
    !e.p.contains(v) && g.neighbours_in(v, &e.p) > 0
}

/// A vertex of `P_i` with at least `need` neighbours in `P_j`.
pub(crate) fn dense_target(g: &Graph, seq: &TemplateSequence, i: usize, j: usize, need: usize) -> Option<usize> {
    let pj = &seq.entries[j].p;
    seq.entries[i].p.iter().find(|&v| g.neighbours_in(v, pj) >= need)
}

/// Outcome of a niceness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NicenessReport {
    pub level_checked: u8,
    pub holds: bool,
    pub violation: Option<Violation>,
}

/// Evaluates the cumulative definition of `level`-nice.
pub fn check_niceness(g: &Graph, seq: &TemplateSequence, level: u8) -> Result<NicenessReport> {
    if !(1..=8).contains(&level) {
        return input(format!("niceness level {level} is not in 1..=8"));
    }
    if let Err(m) = seq.validate(g) {
        return precondition(format!("not a template sequence: {m}"));
    }
    let violation = first_violation(g, seq, level);
    Ok(NicenessReport {
        level_checked: level,
        holds: violation.is_none(),
        violation,
    })
}

/// The first failed clause at or below `level`, without validating `seq`.
pub(crate) fn first_violation(g: &Graph, seq: &TemplateSequence, level: u8) -> Option<Violation> {
    (1..=level).find_map(|l| clause(g, seq, l))
}

fn clause(g: &Graph, seq: &TemplateSequence, level: u8) -> Option<Violation> {
    let lim = seq.limits();
    let n = seq.len();
    let u = seq.support();
    let cores: Vec<VertexSet> = seq.entries.iter().map(|e| e.core.vertices()).collect();
    match level {
        1 => (0..n).find_map(|i| {
            u.difference(&cores[i])
                .iter()
                .find(|&v| few_non_nbrs(g, &seq.entries[i].core, v, lim.attach_non))
                .map(|v| Violation::Few { i, v })
        }),
        2 => u.iter().find_map(|v| {
            let indices: Vec<usize> = (0..n).filter(|&i| heavy_towards(g, seq, i, v, lim)).collect();
            (indices.len() >= seq.s).then(|| Violation::Heavy {
                v,
                indices: indices[..seq.s].to_vec(),
            })
        }),
        3 => (0..n).find_map(|i| {
            (0..n).filter(|&j| j != i).find_map(|j| {
                cores[i].iter().find_map(|v| {
                    seq.entries[j]
                        .core
                        .parts
                        .iter()
                        .position(|p| g.neighbours_in(v, p) >= lim.heavy)
                        .map(|part| Violation::CoreHeavy { i, j, v, part })
                })
            })
        }),
        4 => u.iter().find_map(|v| {
            let indices: Vec<usize> = (0..n).filter(|&i| core_contact(g, seq, i, v)).collect();
            (indices.len() >= lim.dt_s).then(|| Violation::CoreContacts {
                v,
                indices: indices[..lim.dt_s].to_vec(),
            })
        }),
        5 => (0..n).find_map(|i| {
            (i + 1..n).find_map(|j| {
                cores[i].iter().find_map(|a| {
                    g.neighbours(a)
                        .intersection(&cores[j])
                        .first()
                        .map(|b| Violation::CrossEdge { i, j, u: a, v: b })
                })
            })
        }),
        6 => u.iter().find_map(|v| {
            let indices: Vec<usize> = (0..n).filter(|&i| set_contact(g, seq, i, v)).collect();
            (indices.len() >= lim.six).then(|| Violation::SetContacts {
                v,
                indices: indices[..lim.six].to_vec(),
            })
        }),
        7 => (0..n).find_map(|i| {
            let indices: Vec<usize> = (0..n)
                .filter(|&j| j != i && dense_target(g, seq, i, j, lim.dt_s).is_some())
                .collect();
            (indices.len() >= lim.seven).then(|| Violation::DenseTargets {
                i,
                indices: indices[..lim.seven].to_vec(),
            })
        }),
        8 => (0..n).find_map(|i| {
            let out = u.difference(&seq.entries[i].p);
            seq.entries[i].p.iter().find_map(|v| {
                let count = g.neighbours_in(v, &out);
                (count >= lim.eight).then_some(Violation::Outward { i, v, count })
            })
        }),
        _ => None,
    }
}

/// The two consequences of 1-niceness, checked directly: for `i < j` every
/// vertex of `P_j` has fewer than `st^{s−1}` neighbours in each part of
/// `C_i`, and for `i ≠ j` every vertex of `P_j` has at least `⌊w/t⌋`
/// non-neighbours in some part of `C_i`.
pub fn one_nice_consequences(g: &Graph, seq: &TemplateSequence) -> Result<(), String> {
    let lim = seq.limits();
    for (j, ej) in seq.entries.iter().enumerate() {
        for (i, ei) in seq.entries.iter().enumerate() {
            if i == j {
                continue;
            }
            for v in ej.p.iter() {
                if i < j && ei.core.parts.iter().any(|p| g.neighbours_in(v, p) >= lim.attach_nbrs) {
                    return Err(format!("vertex {v} of P_{j} is dense to a part of C_{i}"));
                }
                if !ei.core.parts.iter().any(|p| g.non_neighbours_in(v, p) >= lim.attach_non) {
                    return Err(format!("vertex {v} of P_{j} has few non-neighbours in every part of C_{i}"));
                }
            }
        }
    }
    Ok(())
}

/// The vertices outside `V(C)` with fewer than `⌊w/t⌋` non-neighbours in
/// every part of `core`.
pub fn claim_q(g: &Graph, core: &Core, w: usize, t: usize) -> VertexSet {
    let non = w / t;
    g.vertices()
        .iter()
        .filter(|&v| few_non_nbrs(g, core, v, non))
        .collect()
}

/// Turns `t` vertices of [`claim_q`] into a `(t, d + 1)`-core: each part of
/// `core` keeps `t` vertices complete to them.
pub fn q_tau_witness(g: &Graph, core: &Core, q: &VertexSet, t: usize) -> Option<TauWitness> {
    if q.len() < t || t == 0 {
        return None;
    }
    let top = q.take(t);
    let common = g.common_neighbourhood(&top);
    let mut parts = Vec::with_capacity(core.d() + 1);
    for p in &core.parts {
        let inside = p.intersection(&common);
        if inside.len() < t {
            return None;
        }
        parts.push(inside.take(t));
    }
    parts.push(top);
    let w = TauWitness { t, parts };
    w.validate(g).ok().map(|_| w)
}
