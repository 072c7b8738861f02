use super::{max_clique, Budget, Meter};
use crate::error::Result;
use crate::graph::{Colouring, Graph, VertexSet};

/// Exact chromatic number with a proper colouring attaining it.
///
/// Components are coloured independently. For each one the search runs
/// `k = ω, ω+1, ...` below the DSATUR upper bound, deciding `k`-colourability
/// by saturation-ordered backtracking with a precoloured maximum clique.
pub fn chromatic_number(g: &Graph, budget: Budget) -> Result<(usize, Colouring)> {
    let mut meter = Meter::new(budget);
    let mut assignment = vec![0; g.n()];
    let mut chi = 0;
    for comp in components(g) {
        let (h, map) = g.induced_subgraph(&comp)?;
        let (k, colours) = colour_component(&h, &mut meter)?;
        chi = chi.max(k);
        for (i, c) in colours.into_iter().enumerate() {
            assignment[map[i]] = c;
        }
    }
    let colouring = Colouring {
        assignment,
        num_colours: chi,
    };
    Ok((chi, colouring))
}

/// `χ(G[set])`, with the colouring indexed by the members of `set` in
/// increasing order.
pub fn chromatic_number_of(g: &Graph, set: &VertexSet, budget: Budget) -> Result<(usize, Colouring)> {
    chromatic_number(&g.induced_subgraph(set)?.0, budget)
}

/// DSATUR greedy colouring. Proper, not necessarily optimal.
pub fn colour_greedy(g: &Graph) -> Colouring {
    let n = g.n();
    let mut colour = vec![usize::MAX; n];
    let mut seen: Vec<VertexSet> = vec![VertexSet::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| (seen[v].len(), g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let c = (0..).find(|&c| !seen[v].contains(c)).expect("unbounded range");
        colour[v] = c;
        for u in g.neighbours(v) {
            seen[u].insert(c);
        }
    }
    Colouring::new(colour)
}

fn components(g: &Graph) -> Vec<VertexSet> {
    let mut left = g.vertices();
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for v in &frontier {
                next.union_with(g.neighbours(v));
            }
            next.difference_with(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        left.difference_with(&comp);
        out.push(comp);
    }
    out
}

fn colour_component(h: &Graph, meter: &mut Meter) -> Result<(usize, Vec<usize>)> {
    let greedy = colour_greedy(h);
    let upper = greedy.num_colours;
    let clique = max_clique(h).to_vec();
    for k in clique.len()..upper {
        if let Some(c) = Search::new(h, k, &clique).run(meter)? {
            return Ok((k, c));
        }
    }
    Ok((upper, greedy.assignment))
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<usize>,
    /// `count[v * k + c]`: neighbours of `v` coloured `c`.
    count: Vec<u32>,
    sat: Vec<usize>,
    udeg: Vec<usize>,
    used: usize,
    left: usize,
}

const NONE: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, clique: &[usize]) -> Search<'a> {
        let n = g.n();
        let mut s = Search {
            g,
            k,
            colour: vec![NONE; n],
            count: vec![0; n * k],
            sat: vec![0; n],
            udeg: (0..n).map(|v| g.degree(v)).collect(),
            used: 0,
            left: n,
        };
        for (c, &v) in clique.iter().enumerate() {
            s.assign(v, c);
        }
        s.used = clique.len();
        s
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        self.left -= 1;
        for u in self.g.neighbours(v) {
            let slot = &mut self.count[u * self.k + c];
            if *slot == 0 {
                self.sat[u] += 1;
            }
            *slot += 1;
            self.udeg[u] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = NONE;
        self.left += 1;
        for u in self.g.neighbours(v) {
            let slot = &mut self.count[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] -= 1;
            }
            self.udeg[u] += 1;
        }
    }

    fn pick(&self) -> usize {
        let mut best = NONE;
        for v in 0..self.colour.len() {
            if self.colour[v] == NONE
                && (best == NONE
                    || (self.sat[v], self.udeg[v]) > (self.sat[best], self.udeg[best]))
            {
                best = v;
            }
        }
        best
    }

    fn run(mut self, meter: &mut Meter) -> Result<Option<Vec<usize>>> {
        Ok(self.step(meter)?.then_some(self.colour))
    }

    fn step(&mut self, meter: &mut Meter) -> Result<bool> {
        if self.left == 0 {
            return Ok(true);
        }
        meter.tick()?;
        let v = self.pick();
        if self.sat[v] == self.k {
            return Ok(false);
        }
        let limit = (self.used + 1).min(self.k);
        for c in 0..limit {
            if self.count[v * self.k + c] != 0 {
                continue;
            }
            let prev_used = self.used;
            self.used = self.used.max(c + 1);
            self.assign(v, c);
            if self.step(meter)? {
                return Ok(true);
            }
            self.unassign(v, c);
            self.used = prev_used;
        }
        Ok(false)
    }
}
