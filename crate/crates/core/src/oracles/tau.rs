use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::{Graph, VertexSet};

/// `d` disjoint, pairwise-complete parts of size `t`: a complete `d`-partite
/// subgraph (not necessarily induced), certifying `τ_d ≥ t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauWitness {
    pub t: usize,
    pub parts: Vec<VertexSet>,
}

impl TauWitness {
    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut seen = VertexSet::new();
        for (i, p) in self.parts.iter().enumerate() {
            if p.len() != self.t {
                return Err(format!("part {i} has {} vertices, expected {}", p.len(), self.t));
            }
            if p.last().is_some_and(|v| v >= g.n()) {
                return Err(format!("part {i} leaves the vertex range"));
            }
            if !seen.is_disjoint(p) {
                return Err(format!("part {i} overlaps an earlier part"));
            }
            seen.union_with(p);
        }
        for i in 0..self.parts.len() {
            for j in i + 1..self.parts.len() {
                if !g.sets_complete(&self.parts[i], &self.parts[j]) {
                    return Err(format!("parts {i} and {j} are not complete to each other"));
                }
            }
        }
        Ok(())
    }
}

/// `τ_d(G)` with a witness for the maximum (none when it is 0).
pub fn tau(g: &Graph, d: usize) -> Result<(usize, Option<TauWitness>)> {
    if d == 0 {
        return input("tau needs d >= 1");
    }
    let mut best = None;
    for t in 1..=g.n() / d {
        match tau_at_least(g, d, t) {
            Some(w) => best = Some(w),
            None => break,
        }
    }
    Ok((best.as_ref().map_or(0, |w| w.t), best))
}

/// A witness for `τ_d(G) ≥ t`, if one exists.
pub fn tau_at_least(g: &Graph, d: usize, t: usize) -> Option<TauWitness> {
    find_core_in(g, t, d, &g.vertices(), false).map(|parts| TauWitness { t, parts })
}

/// Exhaustive search for `d` pairwise-complete `w`-subsets of `allowed`,
/// each stable when `stable` is set.
///
/// Parts are listed with increasing minima and the first hit in lexicographic
/// order of `(part 1, part 2, ...)` is returned.
pub fn find_core_in(
    g: &Graph,
    w: usize,
    d: usize,
    allowed: &VertexSet,
    stable: bool,
) -> Option<Vec<VertexSet>> {
    if d == 0 {
        return Some(Vec::new());
    }
    if w == 0 {
        return Some(vec![VertexSet::new(); d]);
    }
    let mut pool = allowed.intersection(&g.vertices());
    if d >= 2 {
        peel(g, &mut pool, (d - 1) * w);
    }
    if pool.len() < d * w {
        return None;
    }
    let kernel = Kernel { g, w, d, stable };
    let mut parts = Vec::with_capacity(d);
    let mut cur = Vec::with_capacity(w);
    kernel
        .part(0, &pool, &pool, &mut cur, &mut parts)
        .then_some(parts)
}

struct Kernel<'a> {
    g: &'a Graph,
    w: usize,
    d: usize,
    stable: bool,
}

impl Kernel<'_> {
    /// Extends part `j` (partially `cur`) from `cand`; `outer` holds the
    /// vertices still eligible for parts after `j`.
    fn part(
        &self,
        j: usize,
        cand: &VertexSet,
        outer: &VertexSet,
        cur: &mut Vec<usize>,
        parts: &mut Vec<VertexSet>,
    ) -> bool {
        if cur.len() == self.w {
            parts.push(cur.iter().copied().collect());
            if j + 1 == self.d {
                return true;
            }
            let saved = std::mem::take(cur);
            if self.part(j + 1, outer, outer, cur, parts) {
                return true;
            }
            *cur = saved;
            parts.pop();
            return false;
        }
        let later = (self.d - j - 1) * self.w;
        let need = self.w - cur.len();
        let mut left = cand.len();
        for x in cand {
            if left < need {
                break;
            }
            left -= 1;
            let next_outer = if later == 0 {
                VertexSet::new()
            } else {
                let mut o = outer.intersection(self.g.neighbours(x));
                if cur.is_empty() {
                    o = o.above(x);
                }
                if o.len() < later {
                    continue;
                }
                o
            };
            let mut next_cand = cand.above(x);
            if self.stable {
                next_cand.difference_with(self.g.neighbours(x));
            }
            if next_cand.len() < need - 1 {
                continue;
            }
            cur.push(x);
            if self.part(j, &next_cand, &next_outer, cur, parts) {
                return true;
            }
            cur.pop();
        }
        false
    }
}

/// Drops vertices with fewer than `need` neighbours inside `pool` until none
/// remain.
fn peel(g: &Graph, pool: &mut VertexSet, need: usize) {
    loop {
        let weak: Vec<usize> = pool.iter().filter(|&v| g.neighbours_in(v, pool) < need).collect();
        if weak.is_empty() {
            return;
        }
        for v in weak {
            pool.remove(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn tau_examples() {
        let k33 = families::complete_bipartite(3, 3).unwrap();
        assert_eq!(tau(&k33, 2).unwrap().0, 3);
        let p = families::petersen();
        assert_eq!(tau(&p, 1).unwrap().0, 10);
        assert_eq!(tau(&p, 2).unwrap().0, 1);
        assert_eq!(tau(&p, 3).unwrap().0, 0);
        assert_eq!(tau(&Graph::empty(4).unwrap(), 2).unwrap(), (0, None));
        assert!(tau(&p, 0).is_err());
    }

    #[test]
    fn witness_validates() {
        let g = families::complete(7).unwrap();
        let (t, w) = tau(&g, 3).unwrap();
        assert_eq!(t, 2);
        w.unwrap().validate(&g).unwrap();
    }

    #[test]
    fn lexicographically_least_core() {
        let k4 = families::complete(4).unwrap();
        let parts = find_core_in(&k4, 2, 2, &k4.vertices(), false).unwrap();
        assert_eq!(parts[0].to_vec(), vec![0, 1]);
        assert_eq!(parts[1].to_vec(), vec![2, 3]);
        let c4 = families::cycle(4).unwrap();
        let parts = find_core_in(&c4, 2, 2, &c4.vertices(), true).unwrap();
        assert_eq!(parts[0].to_vec(), vec![0, 2]);
        assert_eq!(parts[1].to_vec(), vec![1, 3]);
        let c5 = families::cycle(5).unwrap();
        assert!(find_core_in(&c5, 2, 2, &c5.vertices(), false).is_none());
    }

    #[test]
    fn stable_flag_respected() {
        let k4 = families::complete(4).unwrap();
        assert!(find_core_in(&k4, 2, 2, &k4.vertices(), true).is_none());
        assert!(find_core_in(&k4, 1, 4, &k4.vertices(), true).is_some());
    }
}
