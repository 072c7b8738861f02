use serde::{Deserialize, Serialize};

use crate::graph::{families, Graph, VertexSet};

/// Pattern vertex `i` is mapped to host vertex `mapping[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub mapping: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and that adjacency and non-adjacency are both
    /// preserved.
    pub fn validate_induced(&self, g: &Graph, h: &Graph) -> Result<(), String> {
        if self.mapping.len() != h.n() {
            return Err(format!(
                "mapping covers {} of {} pattern vertices",
                self.mapping.len(),
                h.n()
            ));
        }
        let mut seen = VertexSet::new();
        for (i, &v) in self.mapping.iter().enumerate() {
            if v >= g.n() {
                return Err(format!("pattern vertex {i} maps outside the host"));
            }
            if !seen.insert(v) {
                return Err(format!("host vertex {v} used twice"));
            }
        }
        for x in 0..h.n() {
            for y in x + 1..h.n() {
                let (u, v) = (self.mapping[x], self.mapping[y]);
                if h.is_adjacent(x, y) != g.is_adjacent(u, v) {
                    return Err(format!("pair ({x}, {y}) -> ({u}, {v}) changes adjacency"));
                }
            }
        }
        Ok(())
    }

    pub fn image(&self) -> VertexSet {
        self.mapping.iter().copied().collect()
    }
}

/// An induced copy of `h` in `g`, by backtracking over pattern vertices in
/// a connectivity-first, high-degree-first order.
pub fn find_induced(g: &Graph, h: &Graph) -> Option<Embedding> {
    if h.n() > g.n() {
        return None;
    }
    if h.n() == 0 {
        return Some(Embedding { mapping: vec![] });
    }
    let order = pattern_order(h);
    let mut mapping = vec![usize::MAX; h.n()];
    let mut used = VertexSet::with_universe(g.n());
    Backtrack { g, h, order: &order }
        .step(0, &mut mapping, &mut used)
        .then(|| Embedding { mapping })
}

fn pattern_order(h: &Graph) -> Vec<usize> {
    let mut placed = VertexSet::new();
    let mut order = Vec::with_capacity(h.n());
    while order.len() < h.n() {
        let next = (0..h.n())
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| (h.neighbours_in(v, &placed), h.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed.insert(next);
        order.push(next);
    }
    order
}

struct Backtrack<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: &'a [usize],
}

impl Backtrack<'_> {
    fn step(&self, depth: usize, mapping: &mut [usize], used: &mut VertexSet) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let mut cand = self.g.vertices();
        cand.difference_with(used);
        for &q in &self.order[..depth] {
            if self.h.is_adjacent(p, q) {
                cand.intersect_with(self.g.neighbours(mapping[q]));
            } else {
                cand.difference_with(self.g.neighbours(mapping[q]));
            }
        }
        let need = self.h.degree(p);
        for v in &cand {
            if self.g.degree(v) < need {
                continue;
            }
            mapping[p] = v;
            used.insert(v);
            if self.step(depth + 1, mapping, used) {
                return true;
            }
            used.remove(v);
        }
        mapping[p] = usize::MAX;
        false
    }
}

/// An induced `H_s`, in the canonical layout of
/// [`build_spider`](crate::graph::build_spider): centre, then its `s`
/// neighbours, then `s` leaves per neighbour.
///
/// Enumerates centres, then stable `s`-sets of centre neighbours, then
/// stable leaf systems taking `s` private neighbours of each.
pub fn find_spider(g: &Graph, s: usize) -> Option<Embedding> {
    if s == 0 || 1 + s + s * s > g.n() {
        return None;
    }
    (0..g.n()).find_map(|c| spider_at(g, s, c))
}

pub fn is_hs_free(g: &Graph, s: usize) -> bool {
    find_spider(g, s).is_none()
}

fn spider_at(g: &Graph, s: usize, c: usize) -> Option<Embedding> {
    if g.degree(c) < s {
        return None;
    }
    let mut closed = g.neighbours(c).clone();
    closed.insert(c);
    // A neighbour needs `s` neighbours outside N[c].
    let arms: VertexSet = g
        .neighbours(c)
        .iter()
        .filter(|&x| g.neighbours(x).difference(&closed).len() >= s)
        .collect();
    let mut picked = Vec::with_capacity(s);
    choose_arms(g, s, c, &closed, &arms, &mut picked)
}

fn choose_arms(
    g: &Graph,
    s: usize,
    c: usize,
    closed: &VertexSet,
    cand: &VertexSet,
    picked: &mut Vec<usize>,
) -> Option<Embedding> {
    if picked.len() == s {
        return leaves_for(g, s, c, closed, picked);
    }
    for x in cand {
        let mut next = cand.above(x);
        next.difference_with(g.neighbours(x));
        if next.len() + picked.len() + 1 < s {
            continue;
        }
        picked.push(x);
        if let Some(e) = choose_arms(g, s, c, closed, &next, picked) {
            return Some(e);
        }
        picked.pop();
    }
    None
}

fn leaves_for(g: &Graph, s: usize, c: usize, closed: &VertexSet, arms: &[usize]) -> Option<Embedding> {
    let mut private = Vec::with_capacity(s);
    for &x in arms {
        let mut others = VertexSet::new();
        for &y in arms {
            if y != x {
                others.union_with(g.neighbours(y));
            }
        }
        let mut p = g.neighbours(x).difference(closed);
        p.difference_with(&others);
        if p.len() < s {
            return None;
        }
        private.push(p);
    }
    let mut chosen: Vec<Vec<usize>> = vec![Vec::with_capacity(s); s];
    if !fill_leaves(g, s, &private, 0, &mut VertexSet::new(), &mut chosen) {
        return None;
    }
    let h_n = 1 + s + s * s;
    let mut mapping = vec![0; h_n];
    mapping[0] = c;
    for (i, &x) in arms.iter().enumerate() {
        mapping[i + 1] = x;
        for (j, &l) in chosen[i].iter().enumerate() {
            mapping[families::spider_leaf(s, i + 1, j)] = l;
        }
    }
    Some(Embedding { mapping })
}

/// Chooses `s` leaves from each private set so that all leaves together are
/// stable. `blocked` holds the leaves placed so far and their neighbours.
fn fill_leaves(
    g: &Graph,
    s: usize,
    private: &[VertexSet],
    arm: usize,
    blocked: &mut VertexSet,
    chosen: &mut [Vec<usize>],
) -> bool {
    if arm == private.len() {
        return true;
    }
    if chosen[arm].len() == s {
        return fill_leaves(g, s, private, arm + 1, blocked, chosen);
    }
    let floor = chosen[arm].last().map_or(0, |&l| l + 1);
    let mut cand = private[arm].difference(blocked);
    cand = cand.difference(&VertexSet::range(0, floor));
    for l in &cand {
        let saved = blocked.clone();
        blocked.insert(l);
        blocked.union_with(g.neighbours(l));
        chosen[arm].push(l);
        if fill_leaves(g, s, private, arm, blocked, chosen) {
            return true;
        }
        chosen[arm].pop();
        *blocked = saved;
    }
    false
}
