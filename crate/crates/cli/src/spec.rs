use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Generate,
    Oracle,
    Extract,
    Color,
    Verify,
    Bench,
    Grid,
    Bounds,
}

impl Command {
    pub fn randomized(self) -> bool {
        matches!(self, Command::Generate | Command::Bench)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("command serializes");
        f.write_str(v.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
}

/// What to run. The config file is this struct as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub budget: BudgetSpec,
}

impl ExperimentSpec {
    /// Fields present in `config` replace those from the flags; params merge
    /// key by key.
    pub fn overridden_by(mut self, config: ExperimentSpec) -> ExperimentSpec {
        self.command = config.command;
        if config.target.is_some() {
            self.target = config.target;
        }
        self.params.extend(config.params);
        if config.seed.is_some() {
            self.seed = config.seed;
        }
        if config.budget.ms.is_some() {
            self.budget.ms = config.budget.ms;
        }
        if config.budget.nodes.is_some() {
            self.budget.nodes = config.budget.nodes;
        }
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.command.randomized() && self.seed.is_none() {
            return Err(CliError::Input(format!("{} needs --seed", self.command)));
        }
        Ok(())
    }

    pub fn target(&self, default: &str) -> String {
        self.target.clone().unwrap_or_else(|| default.to_owned())
    }

    pub fn usize(&self, key: &str, default: Option<usize>) -> Result<usize, CliError> {
        match self.params.get(key) {
            None => default.ok_or_else(|| CliError::Input(format!("missing parameter --{key}"))),
            Some(v) => v
                .as_u64()
                .and_then(|x| usize::try_from(x).ok())
                .ok_or_else(|| CliError::Input(format!("--{key} must be a non-negative integer"))),
        }
    }

    pub fn opt_usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        if self.params.contains_key(key) {
            self.usize(key, None).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_f64()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Input(format!("--{key} must be a number"))),
        }
    }

    pub fn str(&self, key: &str) -> Option<&str> {
        self.params.get(key).and_then(Value::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip_is_exact() {
        let text = r#"{"budget":{"ms":500},"command":"bench","params":{"count":3,"join":0.25,"n":12},"seed":9,"target":"cograph"}"#;
        let spec: ExperimentSpec = serde_json::from_str(text).unwrap();
        let back = serde_json::to_value(&spec).unwrap().to_string();
        assert_eq!(back, text);
        assert_eq!(serde_json::from_str::<ExperimentSpec>(&back).unwrap(), spec);
    }

    #[test]
    fn seed_is_required_for_random_commands() {
        let spec = ExperimentSpec {
            command: Command::Generate,
            target: None,
            params: BTreeMap::new(),
            seed: None,
            budget: BudgetSpec::default(),
        };
        assert!(spec.validate().is_err());
        assert!(ExperimentSpec { command: Command::Grid, ..spec }.validate().is_ok());
    }
}
