use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::product::product_colouring;
use super::sequence::{build_greedy_sequence, TemplateSequence};
use super::split::split_sequence;
use super::upgrade::{upgrade_witness, Upgrade};
use crate::bounds::{big, fits, lift_chain, saturate, thresholds, BoundChain, PolyBound};
use crate::error::{input, internal, Error, Result};
use crate::graph::{validate_colouring, Colouring, Graph};
use crate::oracles::{chromatic_number_of, find_spider, tau, tau_at_least, Budget, Embedding, TauWitness};

/// One value of the bound chain: its size, a SHA-256 of its big-endian
/// bytes, and the decimal form when short.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub name: String,
    pub evaluated: bool,
    pub digits: Option<u64>,
    pub sha256: Option<String>,
    pub decimal: Option<String>,
}

/// A class produced by a split, with the classes its own split produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNode {
    /// The split that produced this class.
    pub stage: u8,
    /// Template indices in the class.
    pub templates: Vec<usize>,
    pub colours: usize,
    /// Chain value the colour count is compared with.
    pub bound: String,
    /// Set when an upgrade was indeterminate and the class was coloured
    /// exactly instead.
    pub fallback: Option<String>,
    /// Leaves only: colours used on each `P_i`, and by the cross layer.
    pub inner: Vec<usize>,
    pub layer: usize,
    pub children: Vec<ClassNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub vertices: usize,
    pub colours: usize,
    /// `exact` at the bottom level, `recursive` above it.
    pub method: String,
    pub level: Option<Box<LevelRecord>>,
}

/// One level of the induction: cores have `d` parts and `t > τ_{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub d: usize,
    pub t: usize,
    pub w: usize,
    pub vertices: usize,
    pub templates: usize,
    pub residual: ResidualRecord,
    pub classes: Vec<ClassNode>,
    pub colours: usize,
    pub chain: Vec<ChainEntry>,
}

/// Everything needed to re-check a colouring against the bound chain
/// without repeating the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub s: usize,
    pub d_target: usize,
    pub t: usize,
    pub t_auto: bool,
    pub n: usize,
    pub graph_sha256: String,
    pub colours: usize,
    /// `f1`, or `f1_floor` when `f_1` is too large to evaluate.
    pub bound: String,
    pub within_bound: bool,
    pub fallbacks: usize,
    pub level: LevelRecord,
}

/// SHA-256 of `n` and the sorted edge list.
pub fn graph_digest(g: &Graph) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}:", g.n()));
    for (u, v) in g.edges() {
        h.update(format!("{u}-{v},"));
    }
    hex::encode(h.finalize())
}

/// Number of decimal digits, without converting to decimal.
pub fn decimal_digits(x: &BigUint) -> u64 {
    if x.bits() == 0 {
        return 1;
    }
    let mut k = ((x.bits() - 1) as f64 * std::f64::consts::LOG10_2).floor() as u64;
    let ten = big(10);
    let mut p = ten.pow(u32::try_from(k).expect("digit count fits u32"));
    while &p > x {
        p /= &ten;
        k -= 1;
    }
    while &(&p * &ten) <= x {
        p *= &ten;
        k += 1;
    }
    k + 1
}

fn entry(name: &str, v: Option<&BigUint>) -> ChainEntry {
    match v {
        None => ChainEntry { name: name.into(), evaluated: false, digits: None, sha256: None, decimal: None },
        Some(x) => ChainEntry {
            name: name.into(),
            evaluated: true,
            digits: Some(decimal_digits(x)),
            sha256: Some(hex::encode(Sha256::digest(x.to_bytes_be()))),
            decimal: (x.bits() <= 256).then(|| x.to_string()),
        },
    }
}

/// The bound `f` assumed at level `d`: the base bound at `d = 2`, lifted once
/// per level above.
pub fn level_bound(s: usize, d: usize) -> PolyBound {
    let mut f = PolyBound::base(s);
    for k in 2..d {
        f = f.lift(s, k);
    }
    f
}

/// The chain at `(s, d, t)` with its entries, cached for the process.
pub fn chain_at(s: usize, d: usize, t: usize) -> Result<Arc<(BoundChain, Vec<ChainEntry>)>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, usize), Arc<(BoundChain, Vec<ChainEntry>)>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("chain cache poisoned").get(&(s, d, t)) {
        return Ok(c.clone());
    }
    let chain = lift_chain(s, d, t, &level_bound(s, d))?;
    let entries = chain.named().into_iter().map(|(n, v)| entry(n, v)).collect();
    let made = Arc::new((chain, entries));
    cache
        .lock()
        .expect("chain cache poisoned")
        .insert((s, d, t), made.clone());
    Ok(made)
}

fn chain_value<'c>(chain: &'c BoundChain, name: &str) -> Option<&'c BigUint> {
    chain.named().into_iter().find(|(n, _)| *n == name).and_then(|(_, v)| v)
}

fn lift_error(e: Error, map: &[usize]) -> Error {
    match e {
        Error::TauRefuted(w) => Error::TauRefuted(TauWitness {
            t: w.t,
            parts: w.parts.iter().map(|p| p.iter().map(|v| map[v]).collect()).collect(),
        }),
        Error::HsRefuted { s, embedding } => Error::HsRefuted {
            s,
            embedding: Embedding { mapping: embedding.mapping.iter().map(|&v| map[v]).collect() },
        },
        other => other,
    }
}

/// Colours `G` within `f_1(t)` colours, following the template induction.
///
/// Checks `H_s`-freeness and `t > τ_{d+1}(G)` with the oracles first
/// (`t = None` takes `τ_{d+1}(G) + 1`). A refuted hypothesis is returned as
/// [`Error::HsRefuted`] or [`Error::TauRefuted`].
pub fn colour_with_bound(
    g: &Graph,
    s: usize,
    d_target: usize,
    t: Option<usize>,
    budget: Budget,
) -> Result<(Colouring, Certificate)> {
    if s < 2 || d_target < 2 {
        return input("colouring needs s >= 2 and d >= 2");
    }
    if let Some(embedding) = find_spider(g, s) {
        return Err(Error::HsRefuted { s, embedding });
    }
    let t_auto = t.is_none();
    let t = match t {
        None => tau(g, d_target + 1)?.0 + 1,
        Some(0) => return input("t must be positive"),
        Some(t) => {
            if let Some(w) = tau_at_least(g, d_target + 1, t) {
                return Err(Error::TauRefuted(w));
            }
            t
        }
    };
    let run = Run { s, budget };
    let (assignment, level) = run.level(g, d_target, t)?;
    let colouring = Colouring::new(assignment);
    let fallbacks = count_fallbacks(&level);
    let chain = chain_at(s, d_target, t)?;
    let bound = if chain.0.f1.is_some() { "f1" } else { "f1_floor" };
    let cert = Certificate {
        s,
        d_target,
        t,
        t_auto,
        n: g.n(),
        graph_sha256: graph_digest(g),
        colours: colouring.num_colours,
        bound: bound.into(),
        within_bound: fits(colouring.num_colours, &chain.0.f1_floor()),
        fallbacks,
        level,
    };
    if let Err(m) = verify_certificate(g, &colouring, &cert) {
        return internal(format!("certificate does not verify: {m}"));
    }
    Ok((colouring, cert))
}

fn count_fallbacks(level: &LevelRecord) -> usize {
    fn nodes(n: &ClassNode) -> usize {
        usize::from(n.fallback.is_some()) + n.children.iter().map(nodes).sum::<usize>()
    }
    level.classes.iter().map(nodes).sum::<usize>()
        + level.residual.level.as_ref().map_or(0, |l| count_fallbacks(l))
}

struct Run {
    s: usize,
    budget: Budget,
}

/// Colours written into a shared assignment, each piece in its own range.
struct Palette {
    assign: Vec<usize>,
    next: usize,
}

impl Palette {
    /// Adds `c` (indexed by `members`) as fresh colours; returns how many.
    fn place(&mut self, members: &[usize], c: &Colouring) -> usize {
        let c = c.normalised();
        for (k, &v) in members.iter().enumerate() {
            self.assign[v] = self.next + c.assignment[k];
        }
        self.next += c.num_colours;
        c.num_colours
    }
}

fn stage_bound(stage: u8) -> &'static str {
    match stage {
        1 => "f2",
        3 => "f4",
        5 => "f7",
        _ => "f8",
    }
}

impl Run {
    fn level(&self, h: &Graph, d: usize, t: usize) -> Result<(Vec<usize>, LevelRecord)> {
        let s = self.s;
        let chain = chain_at(s, d, t)?;
        let w = chain.0.w_usize();
        let (seq, residual) = if d.saturating_mul(w) > h.n() {
            (TemplateSequence::new(w, t, s, d), h.vertices())
        } else {
            build_greedy_sequence(h, w, t, s, d)?
        };
        let mut pal = Palette { assign: vec![usize::MAX; h.n()], next: 0 };
        let members = residual.to_vec();
        let residual_rec = if d == 2 {
            let (_, c) = chromatic_number_of(h, &residual, self.budget)?;
            let colours = pal.place(&members, &c);
            ResidualRecord { vertices: members.len(), colours, method: "exact".into(), level: None }
        } else {
            let (rh, map) = h.induced_subgraph(&residual)?;
            let t2 = tau(&rh, d)?.0 + 1;
            let (a, rec) = self.level(&rh, d - 1, t2).map_err(|e| lift_error(e, &map))?;
            let colours = pal.place(&members, &Colouring::new(a));
            ResidualRecord {
                vertices: members.len(),
                colours,
                method: "recursive".into(),
                level: Some(Box::new(rec)),
            }
        };
        let mut classes = Vec::new();
        for class in split_sequence(h, &seq, 1)?.classes {
            if class.is_empty() {
                continue;
            }
            classes.push(self.node(h, &class, 1, &mut pal)?);
        }
        if pal.assign.iter().any(|&c| c == usize::MAX) {
            return internal("a vertex was left uncoloured");
        }
        let record = LevelRecord {
            d,
            t,
            w,
            vertices: h.n(),
            templates: seq.len(),
            residual: residual_rec,
            colours: pal.next,
            classes,
            chain: chain.1.clone(),
        };
        Ok((pal.assign, record))
    }

    fn node(&self, h: &Graph, seq: &TemplateSequence, stage: u8, pal: &mut Palette) -> Result<ClassNode> {
        let mut node = ClassNode {
            stage,
            templates: seq.entries.iter().map(|e| e.index).collect(),
            colours: 0,
            bound: stage_bound(stage).into(),
            fallback: None,
            inner: Vec::new(),
            layer: 0,
            children: Vec::new(),
        };
        let (targets, next): (&[u8], u8) = match stage {
            1 => (&[2], 3),
            3 => (&[4], 5),
            5 => (&[6, 7], 8),
            _ => (&[], 0),
        };
        for &target in targets {
            match upgrade_witness(h, seq, target) {
                Ok(Upgrade::Holds) => {}
                Ok(Upgrade::Witness(w)) => {
                    return internal(format!(
                        "upgrade to {target} produced an induced H_s in a graph checked H_s-free: {:?}",
                        w.embedding.mapping
                    ))
                }
                Err(Error::Indeterminate(m)) => {
                    let u = seq.support();
                    let (_, c) = chromatic_number_of(h, &u, self.budget)?;
                    node.colours = pal.place(&u.to_vec(), &c);
                    node.fallback = Some(m);
                    return Ok(node);
                }
                Err(e) => return Err(e),
            }
        }
        if next == 0 {
            return self.leaf(h, seq, node, pal);
        }
        for class in split_sequence(h, seq, next)?.classes {
            let child = self.node(h, &class, next, pal)?;
            node.colours += child.colours;
            node.children.push(child);
        }
        Ok(node)
    }

    fn leaf(&self, h: &Graph, seq: &TemplateSequence, mut node: ClassNode, pal: &mut Palette) -> Result<ClassNode> {
        let mut inner = Vec::with_capacity(seq.len());
        for e in &seq.entries {
            inner.push(chromatic_number_of(h, &e.p, self.budget)?.1);
        }
        let bound = saturate(&thresholds::eight_degree(seq.d, seq.t, seq.s));
        let c = product_colouring(h, seq, &inner, bound)?;
        node.inner = inner.iter().map(|c| c.num_colours).collect();
        let width = node.inner.iter().copied().max().unwrap_or(1).max(1);
        node.layer = c.assignment.iter().map(|&x| x / width).max().map_or(0, |m| m + 1);
        node.colours = pal.place(&seq.support().to_vec(), &c);
        Ok(node)
    }
}

/// Re-checks a colouring and its certificate: properness, the graph digest,
/// every chain value (re-evaluated), every class count against its bound,
/// and that counts add up level by level.
pub fn verify_certificate(g: &Graph, c: &Colouring, cert: &Certificate) -> Result<(), String> {
    if cert.n != g.n() || cert.graph_sha256 != graph_digest(g) {
        return Err("certificate is for a different graph".into());
    }
    match validate_colouring(g, c) {
        Ok(None) => {}
        Ok(Some((u, v))) => return Err(format!("edge {u}-{v} is monochromatic")),
        Err(e) => return Err(e.to_string()),
    }
    if c.num_colours != cert.colours || cert.level.colours != cert.colours {
        return Err("colour counts disagree".into());
    }
    if cert.level.d != cert.d_target || cert.level.t != cert.t {
        return Err("top level does not match the certificate parameters".into());
    }
    let chain = chain_at(cert.s, cert.d_target, cert.t).map_err(|e| e.to_string())?;
    let f1 = chain.0.f1_floor();
    let within = fits(cert.colours, &f1);
    if within != cert.within_bound || !within {
        return Err(format!("{} colours against {}: bound check fails", cert.colours, cert.bound));
    }
    if cert.fallbacks != count_fallbacks(&cert.level) {
        return Err("fallback count disagrees".into());
    }
    check_level(cert.s, &cert.level)
}

fn check_level(s: usize, l: &LevelRecord) -> Result<(), String> {
    let chain = chain_at(s, l.d, l.t).map_err(|e| e.to_string())?;
    if chain.1 != l.chain {
        return Err(format!("chain at d={}, t={} does not replay", l.d, l.t));
    }
    if l.w != chain.0.w_usize() {
        return Err("width disagrees with the chain".into());
    }
    let sum: usize = l.residual.colours + l.classes.iter().map(|n| n.colours).sum::<usize>();
    if sum != l.colours {
        return Err(format!("level d={} colours {} but parts sum to {sum}", l.d, l.colours));
    }
    if !fits(l.colours, &chain.0.f1_floor()) {
        return Err(format!("level d={} exceeds f1", l.d));
    }
    if let Some(fc) = &chain.0.f_core {
        if !fits(l.residual.colours, fc) {
            return Err("residual exceeds f(T)".into());
        }
    }
    if !fits(l.classes.iter().map(|n| n.colours).sum(), &(big(2 * l.t) * &chain.0.f2)) {
        return Err("templates exceed 2t·f2".into());
    }
    match (&l.residual.level, l.d) {
        (None, 2) => {}
        (Some(inner), d) if d > 2 => {
            if inner.d + 1 != d || inner.colours != l.residual.colours {
                return Err("residual level does not match".into());
            }
            check_level(s, inner)?;
        }
        _ => return Err("residual method does not match the level".into()),
    }
    let eight = thresholds::eight_degree(l.d, l.t, s);
    l.classes.iter().try_for_each(|n| check_node(&chain.0, n, &eight))
}

fn check_node(chain: &BoundChain, n: &ClassNode, eight: &BigUint) -> Result<(), String> {
    let bound = chain_value(chain, &n.bound).ok_or_else(|| format!("unknown bound {}", n.bound))?;
    if !fits(n.colours, bound) {
        return Err(format!("class {:?} uses {} colours, above {}", n.templates, n.colours, n.bound));
    }
    if n.fallback.is_some() {
        return Ok(());
    }
    if n.stage == 8 {
        let width = n.inner.iter().copied().max().unwrap_or(1).max(1);
        if n.inner.len() != n.templates.len() || !fits(n.colours, &(big(width) * eight)) || n.layer == 0 && !n.templates.is_empty() {
            return Err(format!("leaf {:?} breaks the product bound", n.templates));
        }
        return Ok(());
    }
    let sum: usize = n.children.iter().map(|c| c.colours).sum();
    if sum != n.colours {
        return Err(format!("class {:?} colours do not add up", n.templates));
    }
    n.children.iter().try_for_each(|c| check_node(chain, c, eight))
}

/// `max_inner · 3(dt)^{3s}`.
pub fn product_bound(max_inner: usize, d: usize, t: usize, s: usize) -> BigUint {
    big(max_inner) * thresholds::eight_degree(d, t, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete_bipartite, cycle, disjoint_union};

    #[test]
    fn edgeless_uses_one_colour() {
        let g = Graph::empty(5).unwrap();
        let (c, cert) = colour_with_bound(&g, 2, 2, None, Budget::UNLIMITED).unwrap();
        assert_eq!(c.num_colours, 1);
        assert_eq!(cert.t, 1);
        assert_eq!(cert.level.templates, 0);
    }

    #[test]
    fn five_cycle_is_exact_base_case() {
        let g = cycle(5).unwrap();
        let (c, cert) = colour_with_bound(&g, 2, 2, None, Budget::UNLIMITED).unwrap();
        assert_eq!(c.num_colours, 3);
        assert_eq!(cert.level.residual.method, "exact");
        assert!(cert.within_bound);
        let f1 = cert.level.chain.iter().find(|e| e.name == "f1").unwrap();
        assert!(f1.digits.unwrap() > 1000);
    }

    #[test]
    fn template_path_runs_and_replays() {
        let g = disjoint_union(&[complete_bipartite(18, 24).unwrap(), cycle(5).unwrap()]).unwrap();
        let (c, cert) = colour_with_bound(&g, 2, 2, None, Budget::UNLIMITED).unwrap();
        assert_eq!(cert.level.templates, 1);
        assert_eq!(c.num_colours, 3 + 2);
        verify_certificate(&g, &c, &cert).unwrap();
        let again = colour_with_bound(&g, 2, 2, None, Budget::UNLIMITED).unwrap();
        assert_eq!(
            serde_json::to_string(&cert).unwrap(),
            serde_json::to_string(&again.1).unwrap()
        );
        let mut bad = cert.clone();
        bad.level.classes[0].colours += 1;
        assert!(verify_certificate(&g, &c, &bad).is_err());
    }

    #[test]
    fn refutations() {
        let spider = crate::graph::build_spider(2).unwrap();
        assert!(matches!(
            colour_with_bound(&spider, 2, 2, None, Budget::UNLIMITED),
            Err(Error::HsRefuted { .. })
        ));
        let k6 = crate::graph::families::complete(6).unwrap();
        assert!(matches!(
            colour_with_bound(&k6, 2, 2, Some(1), Budget::UNLIMITED),
            Err(Error::TauRefuted(_))
        ));
    }

    #[test]
    fn digits_by_comparison() {
        for x in [0u64, 9, 10, 99, 100, 12345678901234567890] {
            assert_eq!(decimal_digits(&BigUint::from(x)), x.to_string().len() as u64);
        }
    }
}
