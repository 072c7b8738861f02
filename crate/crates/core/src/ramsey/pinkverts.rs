use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bounds::{big, pow, saturate};
use crate::error::{input, precondition, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracles::{chromatic_number_of, max_clique_in, Budget};

/// Pins `a_1..a_k` and disjoint fans `L_1..L_k` with `a_i` adjacent to
/// every vertex of `L_i` and to no vertex of any other fan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinnedFamily {
    pub pins: Vec<usize>,
    pub fans: Vec<VertexSet>,
}

impl PinnedFamily {
    /// Checks the adjacency pattern and that every fan has `χ > ell`.
    pub fn validate(
        &self,
        g: &Graph,
        a: &VertexSet,
        b: &VertexSet,
        ell: usize,
        budget: Budget,
    ) -> Result<(), String> {
        if self.pins.len() != self.fans.len() || self.pins.is_empty() {
            return Err("pins and fans must be nonempty and of equal length".into());
        }
        let pins: VertexSet = self.pins.iter().copied().collect();
        if pins.len() != self.pins.len() {
            return Err("repeated pin".into());
        }
        if !pins.is_subset(a) {
            return Err("pin outside A".into());
        }
        let mut seen = VertexSet::new();
        for (j, fan) in self.fans.iter().enumerate() {
            if !fan.is_subset(b) {
                return Err(format!("fan {j} leaves B"));
            }
            if !seen.is_disjoint(fan) {
                return Err(format!("fan {j} overlaps an earlier fan"));
            }
            seen.union_with(fan);
            for (i, &pin) in self.pins.iter().enumerate() {
                let ok = if i == j {
                    g.is_complete_to(pin, fan)
                } else {
                    g.is_anticomplete_to(pin, fan)
                };
                if !ok {
                    return Err(format!("pin {i} breaks the pattern on fan {j}"));
                }
            }
            match chi_exceeds(g, fan, ell, budget) {
                Ok(true) => {}
                Ok(false) => return Err(format!("fan {j} has chromatic number at most {ell}")),
                Err(e) => return Err(format!("fan {j}: {e}")),
            }
        }
        Ok(())
    }
}

/// `χ(G[set]) > ell`, by exact search when cheaper tests do not decide.
pub fn chi_exceeds(g: &Graph, set: &VertexSet, ell: usize, budget: Budget) -> Result<bool> {
    if set.len() <= ell {
        return Ok(false);
    }
    if ell == 0 || max_clique_in(g, set).len() > ell {
        return Ok(true);
    }
    Ok(chromatic_number_of(g, set, budget)?.0 > ell)
}

/// Whether `χ(B) > k·|A|^{2k−1}·ell`, the chromatic hypothesis under which a
/// family is guaranteed.
pub fn pinkverts_threshold(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    ell: usize,
    budget: Budget,
) -> Result<bool> {
    if k < 1 {
        return input("pinkverts needs k >= 1");
    }
    let bound = big(k) * pow(&big(a.len()), 2 * k - 1) * big(ell);
    chi_exceeds(g, b, saturate(&bound), budget)
}

/// Searches for a [`PinnedFamily`] of `k` pins in `a` and fans in `b`.
///
/// `k = 1` is exhaustive over pins, so it always succeeds when
/// `χ(B) > |A|·ell`. For `k ≥ 2` the search follows the tail construction
/// (equal-degree class, the sets `S_v`, recursion on the non-neighbours of a
/// first pin) and returns `None` when nothing it tries works.
pub fn pinkverts_extract(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    ell: usize,
    t: usize,
    budget: Budget,
) -> Result<Option<PinnedFamily>> {
    if k < 1 || t < 1 {
        return input("pinkverts needs k >= 1 and t >= 1");
    }
    g.check_members(a)?;
    g.check_members(b)?;
    if !a.is_disjoint(b) {
        return precondition("A and B intersect");
    }
    let need = saturate(&pow(&big(t), k - 1));
    if let Some(v) = b.iter().find(|&v| g.neighbours_in(v, a) < need) {
        return precondition(format!("vertex {v} of B has fewer than {need} neighbours in A"));
    }
    let mut search = Search {
        g,
        ell,
        t,
        budget,
        chi: HashMap::new(),
        tried: HashSet::new(),
    };
    let found = search.run(k, a, b)?;
    if let Some(f) = &found {
        if let Err(e) = f.validate(g, a, b, ell, budget) {
            return crate::error::internal(format!("pinned family failed validation: {e}"));
        }
    }
    Ok(found)
}

struct Search<'g> {
    g: &'g Graph,
    ell: usize,
    t: usize,
    budget: Budget,
    chi: HashMap<VertexSet, bool>,
    tried: HashSet<(usize, usize, VertexSet, VertexSet)>,
}

impl Search<'_> {
    fn big_enough(&mut self, set: &VertexSet) -> Result<bool> {
        if let Some(&r) = self.chi.get(set) {
            return Ok(r);
        }
        let r = chi_exceeds(self.g, set, self.ell, self.budget)?;
        self.chi.insert(set.clone(), r);
        Ok(r)
    }

    fn run(&mut self, k: usize, a: &VertexSet, b: &VertexSet) -> Result<Option<PinnedFamily>> {
        let g = self.g;
        if k == 1 {
            for pin in a.iter() {
                let fan = b.intersection(g.neighbours(pin));
                if self.big_enough(&fan)? {
                    return Ok(Some(PinnedFamily { pins: vec![pin], fans: vec![fan] }));
                }
            }
            return Ok(None);
        }
        // Classes of equal |N_v|, largest first.
        let mut classes: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for v in b.iter() {
            classes.entry(g.neighbours_in(v, a)).or_default().insert(v);
        }
        let mut classes: Vec<VertexSet> = classes.into_values().collect();
        classes.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let gap = saturate(&pow(&big(self.t), k - 2));
        for class in &classes {
            for v in class.iter() {
                let nv = a.intersection(g.neighbours(v));
                let sv: VertexSet = class
                    .iter()
                    .filter(|&u| a.intersection(g.neighbours(u)).difference(&nv).len() >= gap)
                    .collect();
                let rest = a.difference(&nv);
                for a1 in nv.iter() {
                    let inner = sv.difference(g.neighbours(a1));
                    if inner.is_empty() || !self.tried.insert((k, a1, rest.clone(), inner.clone())) {
                        continue;
                    }
                    let Some(feather) = self.run(k - 1, &rest, &inner)? else {
                        continue;
                    };
                    let used = feather.fans.iter().fold(VertexSet::new(), |acc, f| acc.union(f));
                    let mut first = b.intersection(g.neighbours(a1)).difference(&used);
                    for &p in &feather.pins {
                        first.difference_with(g.neighbours(p));
                    }
                    if self.big_enough(&first)? {
                        let mut pins = vec![a1];
                        pins.extend(feather.pins);
                        let mut fans = vec![first];
                        fans.extend(feather.fans);
                        return Ok(Some(PinnedFamily { pins, fans }));
                    }
                }
            }
        }
        Ok(None)
    }
}
