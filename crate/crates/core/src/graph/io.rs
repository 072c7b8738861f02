//! Canonical JSON and DIMACS `.col` formats.
//!
//! JSON form: `{"n": <int>, "edges": [[u, v], ...], "name": <string|null>}`
//! with `u < v` in every pair and pairs sorted. Output is byte-stable.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{input, Error, Result};

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    name: Option<String>,
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson {
        n: g.n(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        name: g.name().map(str::to_owned),
    })
    .expect("graph serialization is infallible")
}

/// Accepts any edge order and orientation; rejects what `Graph::new` rejects.
pub fn from_json(text: &str) -> Result<Graph> {
    let raw: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("graph JSON: {e}")))?;
    let edges: Vec<_> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
    let g = Graph::new(raw.n, &edges)?;
    Ok(match raw.name {
        Some(name) => g.with_name(name),
        None => g,
    })
}

/// Reads `p edge n m` / `e u v` (1-based) files. Comment lines start with `c`.
/// The declared edge count is not enforced; duplicate edges are common in the
/// wild.
pub fn read_dimacs(reader: impl BufRead) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Input(format!("read error: {e}")))?;
        let mut it = line.split_whitespace();
        let bad = || Error::Input(format!("line {}: malformed: {line:?}", lineno + 1));
        match it.next() {
            None | Some("c") | Some("%") => {}
            Some("p") => {
                if n.is_some() {
                    return input(format!("line {}: second problem line", lineno + 1));
                }
                let _format = it.next().ok_or_else(bad)?;
                n = Some(it.next().and_then(|x| x.parse::<usize>().ok()).ok_or_else(bad)?);
            }
            Some("e") => {
                let mut endpoint = || -> Result<usize> {
                    let x: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    x.checked_sub(1).ok_or_else(bad)
                };
                edges.push((endpoint()?, endpoint()?));
            }
            Some(_) => return Err(bad()),
        }
    }
    let n = n.ok_or_else(|| Error::Input("missing problem line".into()))?;
    Graph::new(n, &edges)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
