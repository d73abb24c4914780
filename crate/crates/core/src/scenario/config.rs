use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mas::{ModelParams, NewsSchedule, Segment};
use crate::netgen::{generate_ba, Graph};
use crate::seed::{stream_seed, Stream};
use crate::sir::SirParams;

/// Where each run's graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphPolicy {
    /// A brand new graph per run, grown from the run seed.
    Fresh,
    /// The same graph for every run.
    Fixed { seed: u64 },
}

impl fmt::Display for GraphPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphPolicy::Fresh => f.write_str("fresh"),
            GraphPolicy::Fixed { seed } => write!(f, "fixed:{seed}"),
        }
    }
}

impl FromStr for GraphPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fresh" => Ok(GraphPolicy::Fresh),
            _ => s
                .strip_prefix("fixed:")
                .and_then(|n| n.parse().ok())
                .map(|seed| GraphPolicy::Fixed { seed })
                .ok_or_else(|| Error::Config(format!("graph policy must be `fresh` or `fixed:<seed>`, got `{s}`"))),
        }
    }
}

impl Serialize for GraphPolicy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GraphPolicy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub nodes: usize,
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default = "default_policy")]
    pub graph: GraphPolicy,
}

fn default_m() -> usize {
    2
}

fn default_policy() -> GraphPolicy {
    GraphPolicy::Fresh
}

pub const DEFAULT_MAX_CYCLES: u32 = 500;

/// A complete, self-describing experiment.
///
/// The on-disk form is TOML:
///
/// ```toml
/// name = "hoax_debunk"
/// n_runs = 10
/// max_cycles = 500
///
/// [network]
/// nodes = 10000
/// m = 2
/// graph = "fresh"          # or "fixed:<seed>"
///
/// [params]                 # any ModelParams field; omitted ones take defaults
/// debunking_enabled = true
///
/// [params.thresholds]
/// distribution = "uniform"
/// low = 0.0
/// high = 1.0
///
/// [[schedule]]
/// start = 0
/// reliability = 0.67
/// visibility = 0.15
///
/// [[schedule]]
/// start = 3
/// reliability = 0.48
/// visibility = 0.6
///
/// [baseline]               # optional SIR run on the same graphs
/// alpha = 0.05
/// lambda = 0.27
/// initial_spreaders = 1
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub n_runs: usize,
    #[serde(default = "default_max_cycles")]
    pub max_cycles: u32,
    pub network: NetworkConfig,
    #[serde(default)]
    pub params: ModelParams,
    pub schedule: NewsSchedule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline: Option<SirParams>,
}

fn default_max_cycles() -> u32 {
    DEFAULT_MAX_CYCLES
}

fn schedule(segments: &[(u32, f64, f64)]) -> NewsSchedule {
    NewsSchedule::new(
        segments
            .iter()
            .map(|&(start, reliability, visibility)| Segment {
                start,
                reliability,
                visibility,
            })
            .collect(),
    )
    .expect("built-in schedules are valid")
}

/// Network sizes of the misinformation experiment.
pub const HOAX_SIZES: [usize; 4] = [5_000, 10_000, 20_000, 50_000];

/// Reliabilities of the echo-chamber sweep: nine evenly spaced values over [0.45, 0.90].
pub fn echo_reliabilities() -> Vec<f64> {
    linspace(0.45, 0.90, 9)
}

pub fn linspace(from: f64, to: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..count)
            .map(|i| from + (to - from) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

impl ScenarioConfig {
    /// A fully reliable news item seen by 10% of the feed per cycle, with the
    /// SIR baseline alongside.
    pub fn true_news() -> Self {
        ScenarioConfig {
            name: "true_news".into(),
            n_runs: 10,
            max_cycles: DEFAULT_MAX_CYCLES,
            network: NetworkConfig {
                nodes: 10_000,
                m: 2,
                graph: GraphPolicy::Fresh,
            },
            params: ModelParams::default(),
            schedule: schedule(&[(0, 0.99, 0.10)]),
            baseline: Some(SirParams::default()),
        }
    }

    /// Rumor at reliability 0.45, officially confirmed (0.99) at cycle 20.
    pub fn higgs(v1: f64) -> Result<Self> {
        if !(v1 > 0.0 && v1 <= 1.0) {
            return Err(Error::InvalidParameter(format!("v1 must lie in (0, 1], got {v1}")));
        }
        Ok(ScenarioConfig {
            name: "higgs".into(),
            schedule: schedule(&[(0, 0.45, v1), (20, 0.99, v1)]),
            baseline: None,
            ..Self::true_news()
        })
    }

    /// Hoax at reliability 0.67 that is exposed at cycle 3 (reliability 0.48,
    /// visibility 0.6), with debunkers.
    pub fn hoax_debunk(nodes: usize) -> Self {
        ScenarioConfig {
            name: "hoax_debunk".into(),
            network: NetworkConfig {
                nodes,
                m: 2,
                graph: GraphPolicy::Fresh,
            },
            params: ModelParams {
                debunking_enabled: true,
                ..ModelParams::default()
            },
            schedule: schedule(&[(0, 0.67, 0.15), (3, 0.48, 0.60)]),
            baseline: None,
            ..Self::true_news()
        }
    }

    /// Constant-reliability news with debunkers, used for the threshold
    /// polarization and color assortativity measurements.
    pub fn echo(reliability: f64, nodes: usize) -> Result<Self> {
        Ok(ScenarioConfig {
            name: "echo".into(),
            n_runs: 20,
            network: NetworkConfig {
                nodes,
                m: 2,
                graph: GraphPolicy::Fresh,
            },
            params: ModelParams {
                debunking_enabled: true,
                ..ModelParams::default()
            },
            schedule: NewsSchedule::constant(reliability, ECHO_VISIBILITY)?,
            baseline: None,
            max_cycles: DEFAULT_MAX_CYCLES,
        })
    }

    /// Resolves a built-in scenario from `name[:key=value,...]`, e.g.
    /// `higgs:v1=0.05`, `hoax_debunk:n=10000` or `echo:r=0.55,n=1000`.
    pub fn builtin(spec: &str) -> Result<Self> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let mut kv = Vec::new();
        for part in args.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value in `{spec}`, got `{part}`")))?;
            let v: f64 = v
                .parse()
                .map_err(|_| Error::Config(format!("`{k}` needs a number, got `{v}`")))?;
            kv.push((k.trim(), v));
        }
        let take = |key: &str, default: f64| kv.iter().rev().find(|(k, _)| *k == key).map_or(default, |p| p.1);
        let allowed: &[&str] = match name {
            "true_news" => &["n"],
            "higgs" => &["v1", "n"],
            "hoax_debunk" => &["n"],
            "echo" => &["r", "n"],
            _ => return Err(Error::UnknownScenario(name.to_string())),
        };
        if let Some((bad, _)) = kv.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(Error::Config(format!("scenario `{name}` has no argument `{bad}`")));
        }
        let nodes = |default: usize| -> Result<usize> {
            let n = take("n", default as f64);
            if n < 1.0 || n.fract() != 0.0 {
                return Err(Error::Config(format!("n must be a positive integer, got {n}")));
            }
            Ok(n as usize)
        };
        let mut config = match name {
            "true_news" => Self::true_news(),
            "higgs" => Self::higgs(take("v1", 0.10))?,
            "hoax_debunk" => Self::hoax_debunk(nodes(10_000)?),
            "echo" => Self::echo(take("r", 0.50), nodes(1_000)?)?,
            _ => unreachable!(),
        };
        if name != "hoax_debunk" && name != "echo" {
            config.network.nodes = nodes(config.network.nodes)?;
        }
        config.validate()?;
        Ok(config)
    }

    pub const BUILTIN_NAMES: [&'static str; 4] = ["true_news", "higgs", "hoax_debunk", "echo"];

    pub fn validate(&self) -> Result<()> {
        if self.n_runs < 1 {
            return Err(Error::Config("n_runs must be at least 1".into()));
        }
        if self.max_cycles < 1 {
            return Err(Error::Config("max_cycles must be at least 1".into()));
        }
        if self.network.m < 1 || self.network.nodes <= self.network.m {
            return Err(Error::Config(format!(
                "network needs m >= 1 and nodes > m (nodes={}, m={})",
                self.network.nodes, self.network.m
            )));
        }
        self.params.validate()?;
        if let Some(b) = &self.baseline {
            b.validate()?;
        }
        Ok(())
    }

    /// Graph for the run with the given seed.
    pub fn graph_for_run(&self, run_seed: u64) -> Result<Graph> {
        let seed = match self.network.graph {
            GraphPolicy::Fresh => stream_seed(run_seed, Stream::Graph),
            GraphPolicy::Fixed { seed } => seed,
        };
        generate_ba(self.network.nodes, self.network.m, seed)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ScenarioConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// SHA-256 over the canonical JSON form with the name blanked, so two
    /// configs hash alike exactly when they describe the same experiment.
    pub fn config_hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.name.clear();
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    /// Sets one field from `key=value` text.
    ///
    /// `key` is a dotted path into the TOML form (`params.t_active`,
    /// `network.nodes`, `baseline.alpha`, ...). Shortcuts: `reliability` and
    /// `visibility` set that value on every schedule segment, `nodes` and `m`
    /// address the network, bare model parameter names address `params`, and
    /// `schedule` takes `start:r:v` segments separated by `;` or `/`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        let value = value.trim();
        match key {
            "reliability" | "visibility" => {
                let x: f64 = value
                    .parse()
                    .map_err(|_| Error::Config(format!("`{key}` needs a number, got `{value}`")))?;
                let segments = self
                    .schedule
                    .segments()
                    .iter()
                    .map(|s| {
                        let mut s = *s;
                        if key == "reliability" {
                            s.reliability = x;
                        } else {
                            s.visibility = x;
                        }
                        s
                    })
                    .collect();
                self.schedule = NewsSchedule::new(segments)?;
                return Ok(());
            }
            "schedule" => {
                self.schedule = parse_schedule(value)?;
                return Ok(());
            }
            _ => {}
        }
        let path: Vec<&str> = match key {
            "nodes" | "m" | "graph" => vec!["network", key],
            k if !k.contains('.') && MODEL_PARAM_KEYS.contains(&k) => vec!["params", k],
            k => k.split('.').collect(),
        };
        let mut doc = toml::Table::try_from(&*self).map_err(|e| Error::Config(e.to_string()))?;
        let parsed = parse_toml_value(value);
        let mut slot = &mut doc;
        for (depth, part) in path.iter().enumerate() {
            if depth + 1 == path.len() {
                slot.insert(part.to_string(), parsed);
                break;
            }
            let entry = slot
                .entry(part.to_string())
                .or_insert_with(|| toml::Value::Table(toml::Table::new()));
            slot = entry
                .as_table_mut()
                .ok_or_else(|| Error::Config(format!("`{key}` does not name a field")))?;
        }
        let updated: ScenarioConfig = doc
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(format!("cannot set `{key}`: {}", e.message())))?;
        updated.validate()?;
        *self = updated;
        Ok(())
    }

    pub fn with_override(&self, key: &str, value: &str) -> Result<Self> {
        let mut c = self.clone();
        c.set(key, value)?;
        Ok(c)
    }
}

/// Visibility used by the echo-chamber scenario family.
pub const ECHO_VISIBILITY: f64 = 0.15;

const MODEL_PARAM_KEYS: [&str; 9] = [
    "influence_fraction",
    "hub_degree_quantile",
    "delta_influence",
    "delta_persuasion",
    "epsilon_similarity",
    "t_active",
    "debunk_margin",
    "debunking_enabled",
    "initial_spreaders",
];

fn parse_toml_value(text: &str) -> toml::Value {
    let doc = format!("v = {text}");
    match doc.parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").expect("key present"),
        Err(_) => toml::Value::String(text.to_string()),
    }
}

fn parse_schedule(text: &str) -> Result<NewsSchedule> {
    let mut segments = Vec::new();
    for part in text.split([';', '/']).map(str::trim).filter(|p| !p.is_empty()) {
        let fields: Vec<&str> = part.split(':').collect();
        let bad = || Error::Config(format!("schedule segments are `start:r:v`, got `{part}`"));
        if fields.len() != 3 {
            return Err(bad());
        }
        segments.push(Segment {
            start: fields[0].parse().map_err(|_| bad())?,
            reliability: fields[1].parse().map_err(|_| bad())?,
            visibility: fields[2].parse().map_err(|_| bad())?,
        });
    }
    NewsSchedule::new(segments)
}
