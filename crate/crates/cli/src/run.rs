use std::fs;
use std::io::BufReader;
use std::path::Path;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use chibound::bounds::claim_inequalities;
use chibound::graph::gen::{gen_graph, GenSpec, Predicate, Structure};
use chibound::graph::io;
use chibound::oracles::{chromatic_number, find_spider, max_clique, max_stable, tau, Budget};
use chibound::ramsey::{levels_extract, levels_params, pinkverts_extract, ramsey_extract, TauCheck};
use chibound::templates::{
    build_greedy_sequence, chain_at, colour_with_bound, find_core, graph_digest, verify_certificate,
    Certificate,
};
use chibound::{Colouring, Error, Graph, VertexSet};

use crate::report::{digest_of, sha256_hex, Kind, Record, Report, Timing};
use crate::spec::{Command, ExperimentSpec};
use crate::CliError;

/// A successful instance: its result and, for colourings, the certificate
/// digest.
struct Done {
    result: Value,
    certificate: Option<String>,
}

impl Done {
    fn value(result: Value) -> Done {
        Done { result, certificate: None }
    }
}

type Instance = Result<Done, Error>;

pub fn run(spec: &ExperimentSpec) -> Result<Report, CliError> {
    spec.validate()?;
    let budget = Budget {
        max_nodes: spec.budget.nodes,
        deadline: spec.budget.ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
    };
    let start = Instant::now();
    let mut timing = Timing::default();
    let mut outcomes = Vec::new();
    let mut push = |input_sha256: String, job: &mut dyn FnMut() -> Instance| {
        let t0 = Instant::now();
        let done = job();
        timing.per_instance_ms.push(t0.elapsed().as_secs_f64() * 1e3);
        outcomes.push(record(outcomes.len(), input_sha256, done));
    };
    match spec.command {
        Command::Generate => {
            for (seed, gen) in instances(spec)? {
                let g = gen_graph(&gen, seed);
                let digest = g.as_ref().map_or_else(|_| digest_of(&(&gen, seed)), graph_digest);
                push(digest, &mut || {
                    let g = g.clone()?;
                    Ok(Done::value(json!({
                        "graph": graph_value(&g),
                        "n": g.n(),
                        "value": g.edge_count(),
                    })))
                });
            }
        }
        Command::Bench => {
            let (s, d, t) = (spec.usize("s", Some(2))?, spec.usize("d", Some(2))?, spec.opt_usize("t")?);
            for (seed, gen) in instances(spec)? {
                let g = gen_graph(&gen, seed);
                let digest = g.as_ref().map_or_else(|_| digest_of(&(&gen, seed)), graph_digest);
                push(digest, &mut || {
                    let g = g.clone()?;
                    let (c, cert) = colour_with_bound(&g, s, d, t, budget)?;
                    Ok(Done {
                        result: json!({
                            "n": g.n(),
                            "value": c.num_colours,
                            "t": cert.t,
                            "templates": cert.level.templates,
                            "fallbacks": cert.fallbacks,
                        }),
                        certificate: Some(digest_of(&cert)),
                    })
                });
            }
        }
        Command::Oracle | Command::Extract | Command::Color => {
            let which = spec.target(match spec.command {
                Command::Oracle => "omega",
                Command::Extract => "ramsey",
                _ => "",
            });
            check_target(spec.command, &which)?;
            for g in load_inputs(spec)? {
                push(graph_digest(&g), &mut || match spec.command {
                    Command::Oracle => oracle(spec, &which, &g, budget),
                    Command::Extract => extract(spec, &which, &g, budget),
                    _ => color(spec, &g, budget),
                });
            }
        }
        Command::Verify => {
            for rec in load_records(spec)? {
                let digest = rec.get("input_sha256").and_then(Value::as_str).unwrap_or_default().to_owned();
                push(digest, &mut || verify(&rec));
            }
        }
        Command::Grid => match spec.target.as_deref().or(spec.str("check")).unwrap_or("levels-ineq") {
            "levels-ineq" => {
                for (a, b, c, d, t) in levels_grid() {
                    let cell = json!({"a": a, "b": b, "c": c, "d": d, "t": t});
                    push(digest_of(&cell), &mut || {
                        let holds = claim_inequalities(a, b, c, d, t)?;
                        let all = holds.iter().all(|&h| h);
                        let result = json!({"cell": cell, "holds": holds, "value": all});
                        if all {
                            Ok(Done::value(result))
                        } else {
                            Err(Error::Precondition(format!("inequalities {holds:?} at {cell}")))
                        }
                    });
                }
            }
            "chain" => {
                for s in 2..=3 {
                    for d in 2..=3 {
                        for t in 1..=4 {
                            let cell = json!({"s": s, "d": d, "t": t});
                            push(digest_of(&cell), &mut || bounds(s, d, t));
                        }
                    }
                }
            }
            other => return Err(CliError::Input(format!("unknown grid check {other:?}"))),
        },
        Command::Bounds => {
            let (s, d, t) = (spec.usize("s", Some(2))?, spec.usize("d", Some(2))?, spec.usize("t", Some(1))?);
            let cell = json!({"s": s, "d": d, "t": t});
            push(digest_of(&cell), &mut || bounds(s, d, t));
        }
    }
    timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Report::new(spec.clone(), outcomes, timing))
}

fn record(index: usize, input_sha256: String, done: Instance) -> Record {
    let (kind, result, certificate_sha256, error) = match done {
        Ok(d) => (Kind::Ok, d.result, d.certificate, None),
        Err(Error::TauRefuted(w)) => (Kind::Refuted, json!({ "tau_witness": w }), None, Some(Error::TauRefuted(w).to_string())),
        Err(e @ Error::HsRefuted { .. }) => {
            let Error::HsRefuted { s, embedding } = &e else { unreachable!() };
            (Kind::Refuted, json!({ "s": s, "spider": embedding }), None, Some(e.to_string()))
        }
        Err(e @ Error::Resource { .. }) => (Kind::Budget, Value::Null, None, Some(e.to_string())),
        Err(e) => (Kind::Failure, Value::Null, None, Some(e.to_string())),
    };
    Record { index, input_sha256, kind, result, certificate_sha256, error }
}

fn graph_value(g: &Graph) -> Value {
    serde_json::from_str(&io::to_json(g)).expect("graph JSON parses")
}

fn check_target(command: Command, which: &str) -> Result<(), CliError> {
    let known: &[&str] = match command {
        Command::Oracle => &["omega", "alpha", "chi", "tau", "spider"],
        Command::Extract => &["ramsey", "core", "sequence", "levels", "pinkverts"],
        _ => &[""],
    };
    if known.contains(&which) {
        Ok(())
    } else {
        Err(CliError::Input(format!("{command} does not know {which:?}; expected one of {known:?}")))
    }
}

/// `(seed, generator)` per instance; instance `i` uses `seed + i`.
fn instances(spec: &ExperimentSpec) -> Result<Vec<(u64, GenSpec)>, CliError> {
    let kind = spec.target("uniform");
    let n = || spec.usize("n", None);
    let p = || spec.f64("p", 0.2);
    let gen = match kind.as_str() {
        "uniform" => GenSpec::Uniform { n: n()?, p: p()? },
        "cograph" => GenSpec::Cograph { n: n()?, join: spec.f64("join", 0.5)? },
        "incidence" => GenSpec::BipartiteIncidence { n: n()? },
        "planted-core" => GenSpec::Planted {
            n: n()?,
            p: p()?,
            structure: Structure::Core { w: spec.usize("w", Some(2))?, d: spec.usize("d", Some(2))?, stable: true },
        },
        "planted-spider" => GenSpec::Planted { n: n()?, p: p()?, structure: Structure::Spider { s: spec.usize("s", Some(2))? } },
        "hs-free" => GenSpec::Rejection {
            base: Box::new(GenSpec::Uniform { n: n()?, p: p()? }),
            predicates: vec![Predicate::HsFree { s: spec.usize("s", Some(2))? }],
            budget: spec.usize("attempts", Some(10_000))? as u64,
        },
        "spec" => {
            let raw = spec.params.get("gen").cloned().ok_or_else(|| CliError::Input("generator \"spec\" needs params.gen".into()))?;
            serde_json::from_value(raw).map_err(|e| CliError::Input(format!("params.gen: {e}")))?
        }
        other => return Err(CliError::Input(format!("unknown generator {other:?}"))),
    };
    let seed = spec.seed.expect("validated");
    let count = spec.usize("count", Some(1))?;
    Ok((0..count as u64).map(|i| (seed.wrapping_add(i), gen.clone())).collect())
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

fn input_path(spec: &ExperimentSpec) -> Result<&str, CliError> {
    spec.str("input").ok_or_else(|| CliError::Input(format!("{} needs --input", spec.command)))
}

/// A graph (JSON or DIMACS), or every graph carried by a report.
fn load_inputs(spec: &ExperimentSpec) -> Result<Vec<Graph>, CliError> {
    let path = input_path(spec)?;
    let ext = Path::new(path).extension().and_then(|e| e.to_str()).unwrap_or_default();
    if matches!(ext, "col" | "dimacs") {
        let file = fs::File::open(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        return Ok(vec![io::read_dimacs(BufReader::new(file)).map_err(|e| CliError::Input(e.to_string()))?]);
    }
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    if value.get("schema").is_some() {
        let outcomes = value.get("outcomes").and_then(Value::as_array).cloned().unwrap_or_default();
        return outcomes
            .iter()
            .filter_map(|r| r.pointer("/result/graph"))
            .map(|g| io::from_json(&g.to_string()).map_err(|e| CliError::Input(e.to_string())))
            .collect();
    }
    io::from_json(&text).map(|g| vec![g]).map_err(|e| CliError::Input(e.to_string()))
}

fn load_records(spec: &ExperimentSpec) -> Result<Vec<Value>, CliError> {
    let path = input_path(spec)?;
    let value: Value = serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    if value.get("schema").and_then(Value::as_str) != Some(crate::report::SCHEMA) {
        return Err(CliError::Input(format!("{path} is not a schema {} report", crate::report::SCHEMA)));
    }
    Ok(value
        .get("outcomes")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter(|r| r.pointer("/result/certificate").is_some()).cloned().collect())
        .unwrap_or_default())
}

fn oracle(spec: &ExperimentSpec, which: &str, g: &Graph, budget: Budget) -> Instance {
    let result = match which {
        "omega" => {
            let c = max_clique(g);
            json!({"value": c.len(), "witness": c})
        }
        "alpha" => {
            let s = max_stable(g);
            json!({"value": s.len(), "witness": s})
        }
        "chi" => {
            let (k, c) = chromatic_number(g, budget)?;
            json!({"value": k, "colouring": c.assignment})
        }
        "tau" => {
            let (t, w) = tau(g, spec.usize("d", Some(2)).map_err(cli_to_core)?)?;
            json!({"value": t, "witness": w})
        }
        _ => {
            let s = spec.usize("s", Some(2)).map_err(cli_to_core)?;
            let e = find_spider(g, s);
            json!({"value": e.is_none(), "spider": e})
        }
    };
    Ok(Done::value(result))
}

fn cli_to_core(e: CliError) -> Error {
    Error::Input(e.to_string())
}

fn extract(spec: &ExperimentSpec, which: &str, g: &Graph, budget: Budget) -> Instance {
    let get = |k: &str, d: Option<usize>| spec.usize(k, d).map_err(cli_to_core);
    let result = match which {
        "ramsey" => {
            let (x, y) = (get("x", Some(2))?, get("y", Some(2))?);
            let r = ramsey_extract(g, x, y)?;
            json!({"value": r.kind, "members": r.members})
        }
        "core" => {
            let c = find_core(g, get("w", None)?, get("d", Some(2))?, &VertexSet::new())?;
            json!({"value": c.is_some(), "core": c})
        }
        "sequence" => {
            let (seq, rest) = build_greedy_sequence(g, get("w", None)?, get("t", Some(1))?, get("s", Some(2))?, get("d", Some(2))?)?;
            json!({"value": seq.len(), "sequence": seq, "residual": rest})
        }
        "levels" => {
            let params = levels_params(get("a", Some(2))?, get("b", None)?, get("c", Some(1))?, get("d", Some(1))?, get("t", Some(1))?)?;
            let k = params.list_count().ok_or_else(|| Error::Input("k too large".into()))?;
            let p = usize::try_from(&params.p).map_err(|_| Error::Input("p too large".into()))?;
            let lists: Vec<VertexSet> = (0..k).map(|i| VertexSet::range(i * p, ((i + 1) * p).min(g.n()))).collect();
            let sys = levels_extract(g, &lists, &params, TauCheck::Auto)?;
            json!({"value": sys.indices, "system": sys})
        }
        _ => {
            let na = get("na", Some(1))?;
            let a = VertexSet::range(0, na.min(g.n()));
            let b = VertexSet::range(na.min(g.n()), g.n());
            let f = pinkverts_extract(g, &a, &b, get("k", Some(1))?, get("ell", Some(1))?, get("t", Some(1))?, budget)?;
            json!({"value": f.is_some(), "family": f})
        }
    };
    Ok(Done::value(result))
}

fn color(spec: &ExperimentSpec, g: &Graph, budget: Budget) -> Instance {
    let get = |k: &str| spec.usize(k, Some(2)).map_err(cli_to_core);
    let t = spec.opt_usize("t").map_err(cli_to_core)?;
    let (c, cert) = colour_with_bound(g, get("s")?, get("d")?, t, budget)?;
    let f1 = cert.level.chain.iter().find(|e| e.name == "f1").and_then(|e| e.digits);
    Ok(Done {
        certificate: Some(digest_of(&cert)),
        result: json!({
            "value": c.num_colours,
            "t": cert.t,
            "f1_digits": f1,
            "graph": graph_value(g),
            "colouring": c.assignment,
            "certificate": cert,
        }),
    })
}

fn verify(rec: &Value) -> Instance {
    let bad = |m: &str| Error::Precondition(m.to_owned());
    let graph = rec.pointer("/result/graph").ok_or_else(|| bad("record has no graph"))?;
    let g = io::from_json(&graph.to_string())?;
    let assignment: Vec<usize> = serde_json::from_value(rec.pointer("/result/colouring").cloned().unwrap_or_default())
        .map_err(|e| bad(&format!("colouring: {e}")))?;
    let cert_value = rec.pointer("/result/certificate").cloned().unwrap_or_default();
    let cert: Certificate = serde_json::from_value(cert_value.clone()).map_err(|e| bad(&format!("certificate: {e}")))?;
    let claimed = rec.get("certificate_sha256").and_then(Value::as_str);
    if claimed != Some(sha256_hex(cert_value.to_string().as_bytes()).as_str()) {
        return Err(bad("certificate digest does not match"));
    }
    verify_certificate(&g, &Colouring::new(assignment), &cert).map_err(|m| bad(&m))?;
    Ok(Done { result: json!({"value": true}), certificate: claimed.map(str::to_owned) })
}

fn levels_grid() -> Vec<(usize, usize, usize, usize, usize)> {
    let mut cells = Vec::new();
    for a in 2..=4 {
        for b in 1..=a {
            for c in 1..=4 {
                for d in 1..=4 {
                    for t in 1..=4 {
                        cells.push((a, b, c, d, t));
                    }
                }
            }
        }
    }
    cells
}

fn bounds(s: usize, d: usize, t: usize) -> Instance {
    let chain = chain_at(s, d, t)?;
    let f1 = chain.1.iter().find(|e| e.name == "f1").and_then(|e| e.digits);
    Ok(Done::value(json!({"value": f1, "s": s, "d": d, "t": t, "chain": chain.1})))
}
