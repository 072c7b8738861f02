//! Seeded graph generators.
//!
//! Every generator is a pure function of `(GenSpec, seed)`. Planted
//! generators record where the structure went as JSON in the graph name; read
//! it back with [`planted_location`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{families, Graph, GraphBuilder, VertexSet};
use crate::error::{input, Error, Result};
use crate::oracles;

pub const DEFAULT_BUDGET: u64 = 10_000;

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    /// Erdős–Rényi `G(n, p)`.
    Uniform { n: usize, p: f64 },
    /// Redraws `base` until every predicate holds.
    Rejection {
        base: Box<GenSpec>,
        predicates: Vec<Predicate>,
        #[serde(default = "default_budget")]
        budget: u64,
    },
    /// `G(n, p)` noise with `structure` wired onto randomly chosen vertices.
    Planted { n: usize, p: f64, structure: Structure },
    /// Point-line incidence graph of `PG(2, q)` for the largest prime `q`
    /// that fits, padded to `n` with isolated vertices and shuffled. Contains
    /// no `K_{2,2}`.
    BipartiteIncidence { n: usize },
    /// Random cograph: a random cotree with join probability `join`.
    Cograph { n: usize, join: f64 },
    CompleteMultipartite { parts: Vec<usize> },
    /// Disjoint union, drawn with independent sub-seeds.
    Union { parts: Vec<GenSpec> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Predicate {
    HsFree { s: usize },
    TauBelow { d: usize, t: usize },
    TriangleFree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    /// `d` pairwise-complete parts of size `w`; parts are emptied of internal
    /// edges when `stable`.
    Core { w: usize, d: usize, stable: bool },
    /// Pins `a_1..a_k` and cliques `L_1..L_k` of size `fan`, with `a_i`
    /// adjacent to `L_j` iff `i = j`. `extra_pins` further vertices are
    /// joined to every fan vertex.
    PinnedFamily { k: usize, fan: usize, extra_pins: usize },
    /// An induced copy of `H_s`.
    Spider { s: usize },
}

/// Where a planted structure was placed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "planted", rename_all = "snake_case")]
pub enum PlantedLocation {
    Core { parts: Vec<Vec<usize>> },
    PinnedFamily { pins: Vec<usize>, fans: Vec<Vec<usize>>, extra_pins: Vec<usize> },
    /// `mapping[i]` hosts spider vertex `i` in the canonical layout.
    Spider { mapping: Vec<usize> },
}

pub fn planted_location(g: &Graph) -> Option<PlantedLocation> {
    serde_json::from_str(g.name()?).ok()
}

pub fn gen_graph(spec: &GenSpec, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate(spec, &mut rng)
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        input(format!("edge probability {p} outside [0, 1]"))
    }
}

fn generate(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Graph> {
    match spec {
        GenSpec::Uniform { n, p } => uniform(*n, *p, rng),
        GenSpec::Rejection {
            base,
            predicates,
            budget,
        } => {
            for _ in 0..*budget {
                let sub = rng.gen::<u64>();
                let g = generate(base, &mut ChaCha8Rng::seed_from_u64(sub))?;
                if predicates.iter().all(|p| holds(&g, p)) {
                    return Ok(g);
                }
            }
            Err(Error::GenerationFailed { attempts: *budget })
        }
        GenSpec::Planted { n, p, structure } => planted(*n, *p, structure, rng),
        GenSpec::BipartiteIncidence { n } => incidence(*n, rng),
        GenSpec::Cograph { n, join } => {
            check_p(*join)?;
            let mut b = GraphBuilder::new(*n)?;
            let mut order: Vec<usize> = (0..*n).collect();
            order.shuffle(rng);
            cotree(&mut b, &order, *join, rng)?;
            Ok(b.build())
        }
        GenSpec::CompleteMultipartite { parts } => families::complete_multipartite(parts),
        GenSpec::Union { parts } => {
            let gs = parts
                .iter()
                .map(|p| {
                    let sub = rng.gen::<u64>();
                    generate(p, &mut ChaCha8Rng::seed_from_u64(sub))
                })
                .collect::<Result<Vec<_>>>()?;
            families::disjoint_union(&gs)
        }
    }
}

pub fn holds(g: &Graph, p: &Predicate) -> bool {
    match *p {
        Predicate::HsFree { s } => oracles::find_spider(g, s).is_none(),
        Predicate::TauBelow { d, t } => oracles::tau_at_least(g, d, t).is_none(),
        Predicate::TriangleFree => g
            .edges()
            .iter()
            .all(|&(u, v)| g.neighbours(u).is_disjoint(g.neighbours(v))),
    }
}

fn uniform(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    check_p(p)?;
    let mut b = GraphBuilder::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v)?;
            }
        }
    }
    Ok(b.build())
}

fn cotree(b: &mut GraphBuilder, vs: &[usize], join: f64, rng: &mut ChaCha8Rng) -> Result<()> {
    if vs.len() < 2 {
        return Ok(());
    }
    let cut = rng.gen_range(1..vs.len());
    let (l, r) = vs.split_at(cut);
    if rng.gen_bool(join) {
        for &u in l {
            for &v in r {
                b.add_edge(u, v)?;
            }
        }
    }
    cotree(b, l, join, rng)?;
    cotree(b, r, join, rng)
}

fn planted(n: usize, p: f64, structure: &Structure, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let need = match *structure {
        Structure::Core { w, d, .. } => w * d,
        Structure::PinnedFamily { k, fan, extra_pins } => k + k * fan + extra_pins,
        Structure::Spider { s } => {
            if s < 1 {
                return input("spider needs s >= 1");
            }
            1 + s + s * s
        }
    };
    if need > n {
        return input(format!("structure needs {need} vertices, host has {n}"));
    }
    let noise = uniform(n, p, rng)?;
    let mut b = GraphBuilder::new(n)?;
    for (u, v) in noise.edges() {
        b.add_edge(u, v)?;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut chosen = order[..need].to_vec();
    let location = match *structure {
        Structure::Core { w, d, stable } => {
            let parts: Vec<Vec<usize>> = chosen
                .chunks(w)
                .map(|c| {
                    let mut c = c.to_vec();
                    c.sort_unstable();
                    c
                })
                .collect();
            for i in 0..d {
                for j in 0..d {
                    for &u in &parts[i] {
                        for &v in &parts[j] {
                            if i != j {
                                b.add_edge(u, v)?;
                            } else if stable && u != v {
                                b.remove_edge(u, v);
                            }
                        }
                    }
                }
            }
            PlantedLocation::Core { parts }
        }
        Structure::PinnedFamily { k, fan, .. } => {
            let pins = chosen[..k].to_vec();
            let fans: Vec<Vec<usize>> = chosen[k..k + k * fan]
                .chunks(fan.max(1))
                .map(|c| {
                    let mut c = c.to_vec();
                    c.sort_unstable();
                    c
                })
                .collect();
            let extra = chosen[k + k * fan..].to_vec();
            for (i, &a) in pins.iter().enumerate() {
                for (j, l) in fans.iter().enumerate() {
                    for &v in l {
                        if i == j {
                            b.add_edge(a, v)?;
                        } else {
                            b.remove_edge(a, v);
                        }
                    }
                }
            }
            for l in &fans {
                for (x, &u) in l.iter().enumerate() {
                    for &v in &l[x + 1..] {
                        b.add_edge(u, v)?;
                    }
                    for &e in &extra {
                        b.add_edge(e, u)?;
                    }
                }
            }
            PlantedLocation::PinnedFamily {
                pins,
                fans,
                extra_pins: extra,
            }
        }
        Structure::Spider { s } => {
            let h = families::build_spider(s)?;
            chosen.truncate(h.n());
            for x in 0..h.n() {
                for y in x + 1..h.n() {
                    if h.is_adjacent(x, y) {
                        b.add_edge(chosen[x], chosen[y])?;
                    } else {
                        b.remove_edge(chosen[x], chosen[y]);
                    }
                }
            }
            PlantedLocation::Spider { mapping: chosen }
        }
    };
    b.name(serde_json::to_string(&location).expect("location serializes"));
    Ok(b.build())
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Normalised homogeneous coordinates of the points of `PG(2, q)`.
fn projective_points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = Vec::with_capacity(q * q + q + 1);
    for x in 0..q {
        for y in 0..q {
            pts.push([x, y, 1]);
        }
    }
    for x in 0..q {
        pts.push([x, 1, 0]);
    }
    pts.push([1, 0, 0]);
    pts
}

fn incidence(n: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let q = (2..)
        .take_while(|&q| 2 * (q * q + q + 1) <= n)
        .filter(|&q| is_prime(q))
        .last();
    let mut b = GraphBuilder::new(n)?;
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    if let Some(q) = q {
        let pts = projective_points(q);
        let m = pts.len();
        for (i, p) in pts.iter().enumerate() {
            for (j, l) in pts.iter().enumerate() {
                if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                    b.add_edge(label[i], label[m + j])?;
                }
            }
        }
    }
    Ok(b.build())
}

/// Vertices hosting the planted structure, if any.
pub fn planted_vertices(g: &Graph) -> VertexSet {
    match planted_location(g) {
        Some(PlantedLocation::Core { parts }) => parts.into_iter().flatten().collect(),
        Some(PlantedLocation::PinnedFamily {
            pins,
            fans,
            extra_pins,
        }) => pins
            .into_iter()
            .chain(fans.into_iter().flatten())
            .chain(extra_pins)
            .collect(),
        Some(PlantedLocation::Spider { mapping }) => mapping.into_iter().collect(),
        None => VertexSet::new(),
    }
}
