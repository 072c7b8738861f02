//! `chibound`: command-line front end.
//!
//! Exit codes: 0 ran (per-instance failures are in the report), 2 invalid
//! input, 3 search budget exhausted, 4 I/O failure.

mod report;
mod run;
mod spec;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::Value;

use report::Kind;
use spec::{BudgetSpec, Command, ExperimentSpec};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Budget(m) => write!(f, "budget exhausted: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "chibound", version, about = "Certified colouring of graphs without an induced radius-two spider")]
struct Cli {
    command: Command,
    /// Sub-target: oracle name, extractor, generator kind or grid check.
    target: Option<String>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    join: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    y: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    /// Size of the pin side `A` for `extract pinkverts` (vertices `0..na`).
    #[arg(long)]
    na: Option<usize>,
    #[arg(long)]
    check: Option<String>,
    /// Graph JSON, DIMACS `.col`, or a report carrying graphs.
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Node limit for exact searches.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// JSON experiment spec; its fields override the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Cli {
    fn spec(&self) -> Result<ExperimentSpec, CliError> {
        let mut params = BTreeMap::new();
        let ints = [
            ("s", self.s),
            ("d", self.d),
            ("t", self.t),
            ("w", self.w),
            ("n", self.n),
            ("count", self.count),
            ("x", self.x),
            ("y", self.y),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("k", self.k),
            ("ell", self.ell),
            ("na", self.na),
        ];
        for (key, v) in ints {
            if let Some(v) = v {
                params.insert(key.to_owned(), Value::from(v));
            }
        }
        for (key, v) in [("p", self.p), ("join", self.join)] {
            if let Some(v) = v {
                params.insert(key.to_owned(), Value::from(v));
            }
        }
        for (key, v) in [("check", &self.check), ("input", &self.input)] {
            if let Some(v) = v {
                params.insert(key.to_owned(), Value::from(v.clone()));
            }
        }
        let spec = ExperimentSpec {
            command: self.command,
            target: self.target.clone(),
            params,
            seed: self.seed,
            budget: BudgetSpec { ms: self.budget_ms, nodes: self.budget_nodes },
        };
        let Some(path) = &self.config else {
            return Ok(spec);
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let config: ExperimentSpec =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(spec.overridden_by(config))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("chibound: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let spec = cli.spec()?;
    let report = run::run(&spec)?;
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if report.outcomes.iter().any(|r| r.kind == Kind::Budget) {
        let e = CliError::Budget(format!("{} instance(s) hit the budget", report.summary.budget));
        eprintln!("chibound: {e}");
        return Ok(e.code());
    }
    Ok(0)
}
