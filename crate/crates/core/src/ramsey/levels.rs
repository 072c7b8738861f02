use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::extract::{ramsey_extract_in, Kind};
use crate::bounds::{below, fits, claim_inequalities, levels_k, levels_p};
use crate::error::{input, internal, precondition, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracles::{tau_at_least, TauWitness};

/// Hosts up to this size get the `τ_{d+1} < t` hypothesis checked by the
/// oracle under [`TauCheck::Auto`].
pub const AUTO_ORACLE_LIMIT: usize = 2000;

/// How the `τ_{d+1}(G) < t` hypothesis is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauCheck {
    Oracle,
    /// The caller asserts it. Any contradiction met during extraction is
    /// still returned as a [`TauWitness`].
    Trusted,
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelsParams {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub t: usize,
    #[serde(with = "crate::bounds::dec")]
    pub k: BigUint,
    #[serde(with = "crate::bounds::dec")]
    pub p: BigUint,
}

impl LevelsParams {
    /// Number of lists, when it fits in memory.
    pub fn list_count(&self) -> Option<usize> {
        usize::try_from(&self.k).ok()
    }

    pub fn inequalities(&self) -> Result<[bool; 5]> {
        claim_inequalities(self.a, self.b, self.c, self.d, self.t)
    }
}

pub fn levels_params(a: usize, b: usize, c: usize, d: usize, t: usize) -> Result<LevelsParams> {
    Ok(LevelsParams {
        a,
        b,
        c,
        d,
        t,
        k: levels_k(a, b, c, d)?,
        p: levels_p(a, b, c, d, t)?,
    })
}

/// A stable set `x` and `c` list indices (0-based; index 0 is `L_1`) such
/// that `x` meets each chosen list other than the first in at least `a`
/// vertices, and the first in at least `b` if chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSystem {
    pub indices: Vec<usize>,
    pub x: VertexSet,
    pub per_list: BTreeMap<usize, VertexSet>,
}

impl StableSystem {
    pub fn validate(&self, g: &Graph, lists: &[VertexSet], params: &LevelsParams) -> Result<(), String> {
        if self.indices.len() != params.c {
            return Err(format!("{} indices, expected {}", self.indices.len(), params.c));
        }
        if self.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err("indices not strictly increasing".into());
        }
        if self.indices.last().is_some_and(|&i| i >= lists.len()) {
            return Err("index beyond the list count".into());
        }
        if self.x.last().is_some_and(|v| v >= g.n()) || !g.is_stable(&self.x) {
            return Err("x is not a stable set of the graph".into());
        }
        let keys: Vec<usize> = self.per_list.keys().copied().collect();
        if keys != self.indices {
            return Err("per_list keys differ from indices".into());
        }
        let mut covered = VertexSet::new();
        for &i in &self.indices {
            let part = &self.per_list[&i];
            if *part != self.x.intersection(&lists[i]) {
                return Err(format!("per_list[{i}] is not x ∩ L_{i}"));
            }
            let quota = if i == 0 { params.b } else { params.a };
            if part.len() < quota {
                return Err(format!("list {i} holds {} of x, quota {quota}", part.len()));
            }
            covered.union_with(part);
        }
        if covered != self.x {
            return Err("x has vertices outside the chosen lists".into());
        }
        Ok(())
    }
}

/// Finds a [`StableSystem`] in `lists`, or refutes `τ_{d+1}(G) < t` with
/// [`Error::TauRefuted`].
///
/// Requires exactly `k` pairwise disjoint lists, each of at least `p`
/// vertices.
pub fn levels_extract(
    g: &Graph,
    lists: &[VertexSet],
    params: &LevelsParams,
    check: TauCheck,
) -> Result<StableSystem> {
    let fresh = levels_params(params.a, params.b, params.c, params.d, params.t)?;
    if fresh != *params {
        return input("levels parameters do not match their formulas");
    }
    if params.t < 1 {
        return input("levels needs t >= 1");
    }
    if params.list_count() != Some(lists.len()) {
        return precondition(format!("{} lists given, k = {}", lists.len(), params.k));
    }
    let mut seen = VertexSet::new();
    for (i, l) in lists.iter().enumerate() {
        g.check_members(l)?;
        if !seen.is_disjoint(l) {
            return precondition(format!("list {i} meets an earlier list"));
        }
        seen.union_with(l);
        if below(l.len(), &params.p) {
            return precondition(format!("list {i} has {} vertices, p = {}", l.len(), params.p));
        }
    }
    let use_oracle = match check {
        TauCheck::Oracle => true,
        TauCheck::Trusted => false,
        TauCheck::Auto => g.n() <= AUTO_ORACLE_LIMIT,
    };
    if use_oracle {
        if let Some(w) = tau_at_least(g, params.d + 1, params.t) {
            return Err(Error::TauRefuted(w));
        }
    }
    let ctx = Ctx { g, a: params.a, t: params.t };
    let out = ctx.solve(lists.to_vec(), params.b, params.c, params.d)?;
    let sys = out.into_system(lists);
    if let Err(e) = sys.validate(g, lists, params) {
        return internal(format!("levels output failed validation: {e}"));
    }
    Ok(sys)
}

/// The `a = b = c = s` case: `s^{2d+2}` lists of at least
/// `2^{s^{2d+2}} t^{ds+s²+s}` vertices give `s` lists each meeting a common
/// stable set in at least `s` vertices.
pub fn levels2_extract(
    g: &Graph,
    lists: &[VertexSet],
    s: usize,
    d: usize,
    t: usize,
    check: TauCheck,
) -> Result<StableSystem> {
    if s < 2 {
        return input("levels2 needs s >= 2");
    }
    levels_extract(g, lists, &levels_params(s, s, s, d, t)?, check)
}

struct Found {
    indices: Vec<usize>,
    x: VertexSet,
}

impl Found {
    fn into_system(self, lists: &[VertexSet]) -> StableSystem {
        let per_list = self
            .indices
            .iter()
            .map(|&i| (i, self.x.intersection(&lists[i])))
            .collect();
        StableSystem {
            indices: self.indices,
            x: self.x,
            per_list,
        }
    }
}

struct Ctx<'g> {
    g: &'g Graph,
    a: usize,
    t: usize,
}

impl Ctx<'_> {
    fn k(&self, b: usize, c: usize, d: usize) -> Result<usize> {
        let k = levels_k(self.a, b, c, d)?;
        usize::try_from(&k).or_else(|_| internal(format!("k = {k} does not fit")))
    }

    fn p(&self, b: usize, c: usize, d: usize) -> Result<BigUint> {
        levels_p(self.a, b, c, d, self.t)
    }

    /// `parts` vertices of the clique `clique`, cut into blocks of `t`.
    fn refute_with_clique(&self, clique: &VertexSet, parts: usize) -> Error {
        let members = clique.to_vec();
        let parts = members[..parts * self.t]
            .chunks(self.t)
            .map(|c| c.iter().copied().collect())
            .collect();
        Error::TauRefuted(TauWitness { t: self.t, parts })
    }

    /// Every refutation is built inside the union of `lists`, so callers can
    /// lift it by adding a part complete to all of them.
    fn solve(&self, lists: Vec<VertexSet>, b: usize, c: usize, d: usize) -> Result<Found> {
        let (g, t) = (self.g, self.t);
        if d == 0 {
            // τ_1 = |G| ≥ p ≥ t.
            let first = lists[0].take(t);
            if first.len() < t {
                return internal("list shorter than t at d = 0");
            }
            return Err(Error::TauRefuted(TauWitness { t, parts: vec![first] }));
        }
        if c == 1 {
            if b == 0 {
                return Ok(Found { indices: vec![0], x: VertexSet::new() });
            }
            let x = ((d + 1) * t).saturating_sub(1).max(2);
            let r = ramsey_extract_in(g, &lists[0], x, b)?;
            return match r.kind {
                Kind::Stable => Ok(Found { indices: vec![0], x: r.members }),
                Kind::Clique => Err(self.refute_with_clique(&r.members, d + 1)),
            };
        }
        if b == 0 {
            let sub = self.solve(lists[1..].to_vec(), self.a, c - 1, d)?;
            let mut indices = vec![0];
            indices.extend(sub.indices.iter().map(|i| i + 1));
            return Ok(Found { indices, x: sub.x });
        }

        let k = lists.len();
        let p = self.p(b, c, d)?;
        let scale = 2 * (d + 1) * t;
        let l1 = &lists[0];

        // Y: grown by least index while at most |Y|·p/(2(d+1)t) vertices of
        // L_1 have a non-neighbour in Y.
        let mut y = VertexSet::new();
        let mut common = l1.clone();
        loop {
            let next = common.iter().find(|&v| {
                let cand = common.intersection(g.neighbours(v));
                let outside = l1.len() - (y.len() + 1) - cand.len();
                fits(outside * scale, &(&p * (y.len() + 1)))
            });
            let Some(v) = next else { break };
            y.insert(v);
            common.remove(v);
            common.intersect_with(g.neighbours(v));
            if y.len() >= (d + 1) * t {
                return Err(self.refute_with_clique(&y, d + 1));
            }
        }
        let n_set = common;
        if below(2 * n_set.len(), &p) {
            return internal(format!("|N| = {} below p/2 = {}/2", n_set.len(), p));
        }

        let k_prev = self.k(b - 1, c, d)?;
        let p_prev = self.p(b - 1, c, d)?;
        let heavy = |v: usize, i: usize| !below(g.non_neighbours_in(v, &lists[i]), &p_prev);

        // A vertex of N far from k_{b−1,c,d} lists: recurse with b − 1 and
        // add it to the stable set if L_1 is chosen.
        for v in n_set.iter() {
            let far: Vec<usize> = (1..k).filter(|&i| heavy(v, i)).collect();
            if far.len() < k_prev {
                continue;
            }
            let first = n_set.difference(g.neighbours(v)).difference(&VertexSet::singleton(v));
            if below(first.len(), &p_prev) {
                return internal("non-neighbourhood in N below p_{b-1,c,d}");
            }
            let mut sub_lists = vec![first];
            let map: Vec<usize> = std::iter::once(0).chain(far[..k_prev - 1].iter().copied()).collect();
            sub_lists.extend(map[1..].iter().map(|&i| lists[i].difference(g.neighbours(v))));
            let sub = self.solve(sub_lists, b - 1, c, d)?;
            let mut x = sub.x;
            let indices: Vec<usize> = sub.indices.iter().map(|&j| map[j]).collect();
            if indices.first() == Some(&0) {
                x.insert(v);
            }
            return Ok(Found { indices, x });
        }

        // Otherwise bucket N by I_v, the lists where v has few non-neighbours,
        // and take the first t vertices sharing a bucket.
        let mut buckets: BTreeMap<Vec<usize>, VertexSet> = BTreeMap::new();
        let mut pick = None;
        for v in n_set.iter() {
            let near: Vec<usize> = (1..k).filter(|&i| !heavy(v, i)).collect();
            let entry = buckets.entry(near.clone()).or_default();
            entry.insert(v);
            if entry.len() == t {
                pick = Some((near, entry.clone()));
                break;
            }
        }
        let Some((near, tee)) = pick else {
            return internal("no t vertices of N share an index set");
        };
        let k_down = self.k(self.a, c, d - 1)?;
        let p_down = self.p(self.a, c, d - 1)?;
        if near.len() < k_down {
            return internal("shared index set smaller than k_{a,c,d-1}");
        }
        let joint = g.common_neighbourhood(&tee);
        let map = &near[..k_down];
        let sub_lists: Vec<VertexSet> = map.iter().map(|&i| lists[i].intersection(&joint)).collect();
        if sub_lists.iter().any(|l| below(l.len(), &p_down)) {
            return internal("list complete to T below p_{a,c,d-1}");
        }
        match self.solve(sub_lists, self.a, c, d - 1) {
            Ok(sub) => Ok(Found {
                indices: sub.indices.iter().map(|&j| map[j]).collect(),
                x: sub.x,
            }),
            Err(Error::TauRefuted(mut w)) if w.t == t => {
                w.parts.push(tee);
                Err(Error::TauRefuted(w))
            }
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chunks(n_lists: usize, size: usize) -> Vec<VertexSet> {
        (0..n_lists).map(|i| VertexSet::range(i * size, (i + 1) * size)).collect()
    }

    #[test]
    fn params_match_examples() {
        let p = levels_params(2, 2, 1, 1, 2).unwrap();
        assert_eq!((p.k.clone(), p.p.clone()), (BigUint::from(4u8), BigUint::from(1024u16)));
        assert_eq!(levels_params(2, 1, 2, 1, 1).unwrap().p, BigUint::from(512u16));
        assert!(levels_params(2, 1, 0, 1, 1).is_err());
    }

    #[test]
    fn edgeless_host_takes_first_lists() {
        let params = levels_params(2, 1, 2, 1, 1).unwrap();
        let lists = chunks(9, 512);
        let g = Graph::empty(9 * 512).unwrap();
        let sys = levels_extract(&g, &lists, &params, TauCheck::Oracle).unwrap();
        sys.validate(&g, &lists, &params).unwrap();
        assert_eq!(sys.indices.len(), 2);
    }

    #[test]
    fn b_zero_includes_first_list() {
        let params = levels_params(2, 0, 2, 1, 1).unwrap();
        let k = params.list_count().unwrap();
        let lists = chunks(k, 32);
        let g = Graph::empty(k * 32).unwrap();
        let sys = levels_extract(&g, &lists, &params, TauCheck::Trusted).unwrap();
        assert_eq!(sys.indices[0], 0);
        assert!(sys.per_list[&0].is_empty());
    }

    #[test]
    fn clique_host_is_refuted() {
        let params = levels_params(2, 2, 1, 1, 1).unwrap();
        let lists = chunks(4, 16);
        let mut b = crate::graph::GraphBuilder::new(64).unwrap();
        for u in 0..16 {
            for v in u + 1..16 {
                b.add_edge(u, v).unwrap();
            }
        }
        let g = b.build();
        for check in [TauCheck::Trusted, TauCheck::Oracle] {
            match levels_extract(&g, &lists, &params, check) {
                Err(Error::TauRefuted(w)) => {
                    w.validate(&g).unwrap();
                    assert_eq!(w.d(), 2);
                }
                other => panic!("expected refutation, got {other:?}"),
            }
        }
    }

    #[test]
    fn wrong_list_count_rejected() {
        let params = levels_params(2, 2, 1, 1, 1).unwrap();
        let g = Graph::empty(64).unwrap();
        assert!(matches!(
            levels_extract(&g, &chunks(3, 16), &params, TauCheck::Trusted),
            Err(Error::Precondition(_))
        ));
    }
}
