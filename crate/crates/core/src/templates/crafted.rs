//! Hand-built hosts with known template sequences. All are triangle-free, so
//! `t = 1 > τ_3` holds and the sequences run with `s = 2`, `d = 2`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::core::Core;
use super::sequence::{Template, TemplateSequence};
use crate::error::{internal, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};

/// Accumulates edges, then relabels vertices by a seeded permutation.
struct Host {
    n: usize,
    edges: Vec<(usize, usize)>,
    templates: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>,
}

impl Host {
    fn new() -> Host {
        Host { n: 0, edges: Vec::new(), templates: Vec::new() }
    }

    fn fresh(&mut self, k: usize) -> Vec<usize> {
        let out = (self.n..self.n + k).collect();
        self.n += k;
        out
    }

    fn join(&mut self, a: &[usize], b: &[usize]) {
        for &x in a {
            for &y in b {
                self.edges.push((x, y));
            }
        }
    }

    /// A `K_{w,w}` core; returns its position.
    fn core(&mut self, w: usize) -> usize {
        let a = self.fresh(w);
        let b = self.fresh(w);
        self.join(&a, &b);
        self.templates.push((a, b, Vec::new()));
        self.templates.len() - 1
    }

    /// A vertex attached to `count` vertices of part `A` of template `i`.
    fn attach(&mut self, i: usize, count: usize) -> usize {
        let v = self.fresh(1)[0];
        let a = self.templates[i].0[..count].to_vec();
        self.join(&[v], &a);
        self.templates[i].2.push(v);
        v
    }

    fn finish(self, w: usize, rng: &mut ChaCha8Rng) -> Result<(Graph, TemplateSequence)> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        perm.shuffle(rng);
        let mut b = GraphBuilder::new(self.n)?;
        for &(u, v) in &self.edges {
            b.add_edge(perm[u], perm[v])?;
        }
        let g = b.build();
        let map = |xs: &[usize]| -> VertexSet { xs.iter().map(|&x| perm[x]).collect() };
        let mut seq = TemplateSequence::new(w, 1, 2, 2);
        for (index, (a, bb, extra)) in self.templates.iter().enumerate() {
            let core = Core { parts: vec![map(a), map(bb)], stable: true };
            let p = core.vertices().union(&map(extra));
            seq.entries.push(Template { index, core, p });
        }
        if let Err(m) = seq.validate(&g) {
            return internal(format!("crafted sequence is invalid: {m}"));
        }
        Ok((g, seq))
    }
}

/// 1-nice but not 2-nice at `w = 11`: a hub in `P_1` with at least eight
/// neighbours in part `A` of every core, plus a sparse matching between
/// `B_1` and `A_2`.
pub fn target2_host(seed: u64) -> Result<(Graph, TemplateSequence)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = 11;
    let mut h = Host::new();
    let cores = rng.gen_range(2..=3);
    for _ in 0..cores {
        h.core(w);
    }
    let hub = h.attach(0, rng.gen_range(8..=w));
    for i in 1..cores {
        let k = rng.gen_range(8..=w);
        let a = h.templates[i].0[w - k..].to_vec();
        h.join(&[hub], &a);
    }
    let mut b1 = h.templates[0].1.clone();
    let mut a2 = h.templates[1].0.clone();
    b1.shuffle(&mut rng);
    a2.shuffle(&mut rng);
    for (&x, &y) in b1.iter().zip(&a2).take(rng.gen_range(0..=4)) {
        h.edges.push((x, y));
    }
    for _ in 0..rng.gen_range(0..=3) {
        h.fresh(1);
    }
    h.finish(w, &mut rng)
}

/// 5-nice but not 6-nice: a centre vertex in `P_0` adjacent to one
/// attachment vertex of each of at least 36 further templates.
pub fn target6_host(seed: u64) -> Result<(Graph, TemplateSequence)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = rng.gen_range(2..=3);
    let mut h = Host::new();
    h.core(w);
    let centre = h.attach(0, 2);
    let leaves = rng.gen_range(36..=44);
    let mut pins = Vec::with_capacity(leaves);
    for _ in 0..leaves {
        let i = h.core(w);
        let a = h.attach(i, 2);
        h.edges.push((centre, a));
        pins.push(a);
    }
    for i in 1..=leaves {
        if rng.gen_bool(0.3) {
            let e = h.attach(i, 2);
            let j = rng.gen_range(0..leaves);
            if j + 1 != i {
                h.edges.push((e, pins[j]));
            }
        }
    }
    h.finish(w, &mut rng)
}

/// Several `K_{w,w}` templates with attachment vertices, random edges between
/// attachments of templates of opposite parity, and occasionally a single
/// edge between two cores.
pub fn multi_template_host(seed: u64) -> Result<(Graph, TemplateSequence)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = rng.gen_range(2..=3);
    let mut h = Host::new();
    let k = rng.gen_range(2..=6);
    for _ in 0..k {
        h.core(w);
    }
    for i in 0..k {
        for _ in 0..rng.gen_range(0..=6) {
            let c = rng.gen_range(2..=w);
            h.attach(i, c);
        }
    }
    let p = rng.gen_range(0.0..0.6);
    for i in 0..k {
        for j in (i + 1..k).step_by(2) {
            let (xs, ys) = (h.templates[i].2.clone(), h.templates[j].2.clone());
            for &x in &xs {
                for &y in &ys {
                    if rng.gen_bool(p) {
                        h.edges.push((x, y));
                    }
                }
            }
        }
    }
    if k >= 2 && rng.gen_bool(0.4) {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if i != j {
            let (u, v) = (h.templates[i].1[0], h.templates[j].1[0]);
            h.edges.push((u, v));
        }
    }
    h.finish(w, &mut rng)
}

/// A disjoint union of complete bipartite graphs with sides in
/// `w..=w + 3`, plus isolated vertices. `H_2`-free and triangle-free.
pub fn bipartite_union(seed: u64, w: usize, max_parts: usize) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = Host::new();
    for _ in 0..rng.gen_range(1..=max_parts.max(1)) {
        let a = h.fresh(rng.gen_range(w..=w + 3));
        let b = h.fresh(rng.gen_range(w..=w + 3));
        h.join(&a, &b);
    }
    h.fresh(rng.gen_range(0..=3));
    let mut perm: Vec<usize> = (0..h.n).collect();
    perm.shuffle(&mut rng);
    let edges: Vec<(usize, usize)> = h.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::new(h.n, &edges)
}
