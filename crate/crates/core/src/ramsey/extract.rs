use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bounds::below;
use crate::error::{input, internal, precondition, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracles::{max_clique_in, max_stable_in};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Clique,
    Stable,
}

/// A clique of size `x + 1` or a stable set of size `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueOrStable {
    pub kind: Kind,
    pub members: VertexSet,
}

impl CliqueOrStable {
    pub fn validate(&self, g: &Graph, x: usize, y: usize) -> Result<(), String> {
        if self.members.last().is_some_and(|v| v >= g.n()) {
            return Err("member outside the vertex range".into());
        }
        match self.kind {
            Kind::Clique if self.members.len() != x + 1 => {
                Err(format!("clique has {} vertices, expected {}", self.members.len(), x + 1))
            }
            Kind::Clique if !g.is_clique(&self.members) => Err("clique has a non-edge".into()),
            Kind::Stable if self.members.len() != y => {
                Err(format!("stable set has {} vertices, expected {y}", self.members.len()))
            }
            Kind::Stable if !g.is_stable(&self.members) => Err("stable set has an edge".into()),
            _ => Ok(()),
        }
    }
}

pub fn ramsey_extract(g: &Graph, x: usize, y: usize) -> Result<CliqueOrStable> {
    ramsey_extract_in(g, &g.vertices(), x, y)
}

/// Same as [`ramsey_extract`], inside `within`.
///
/// Keeps a clique `K` complete to the live set `S` and a stable set `Z`
/// anticomplete to it. With `c` clique vertices still wanted beyond one and
/// `r` stable vertices still wanted, `|S| ≥ c·x^{r−1}` holds throughout: the
/// least vertex of `S` goes to `Z` when its non-neighbourhood has at least
/// `c·x^{r−2}` vertices and to `K` otherwise.
pub fn ramsey_extract_in(g: &Graph, within: &VertexSet, x: usize, y: usize) -> Result<CliqueOrStable> {
    if x < 2 || y < 1 {
        return input(format!("ramsey needs x >= 2 and y >= 1 (x={x}, y={y})"));
    }
    g.check_members(within)?;
    let need = BigUint::from(x).pow(u32::try_from(y).map_err(|_| crate::Error::Input("y too large".into()))?);
    if below(within.len(), &need) {
        return precondition(format!("{} vertices, need x^y = {need}", within.len()));
    }
    let mut live = within.clone();
    let mut clique = VertexSet::new();
    let mut stable = VertexSet::new();
    let (mut c, mut r) = (x, y);
    let xb = BigUint::from(x);
    let found = loop {
        if r == 1 {
            if let Some(v) = live.first() {
                stable.insert(v);
                break Some((Kind::Stable, stable));
            }
            break None;
        }
        if c == 1 {
            let edge = live
                .iter()
                .find_map(|u| live.above(u).intersection(g.neighbours(u)).first().map(|v| (u, v)));
            match edge {
                Some((u, v)) => {
                    clique.insert(u);
                    clique.insert(v);
                    break Some((Kind::Clique, clique));
                }
                None if live.len() >= r => {
                    stable.union_with(&live.take(r));
                    break Some((Kind::Stable, stable));
                }
                None => break None,
            }
        }
        let Some(v) = live.first() else { break None };
        live.remove(v);
        let nbrs = live.intersection(g.neighbours(v));
        let non = live.difference(g.neighbours(v));
        let side = BigUint::from(c) * xb.pow(u32::try_from(r - 2).expect("r fits"));
        if !below(non.len(), &side) {
            stable.insert(v);
            live = non;
            r -= 1;
        } else {
            clique.insert(v);
            live = nbrs;
            c -= 1;
        }
    };
    if let Some((kind, members)) = found {
        let out = CliqueOrStable { kind, members };
        if out.validate(g, x, y).is_ok() {
            return Ok(out);
        }
    }
    // Not reachable when the counting above is right; exact oracles decide.
    let k = max_clique_in(g, within);
    if k.len() > x {
        return Ok(CliqueOrStable { kind: Kind::Clique, members: k.take(x + 1) });
    }
    let s = max_stable_in(g, within);
    if s.len() >= y {
        return Ok(CliqueOrStable { kind: Kind::Stable, members: s.take(y) });
    }
    internal(format!("{} vertices with neither a {}-clique nor a {y}-stable set", within.len(), x + 1))
}
