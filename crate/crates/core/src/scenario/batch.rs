use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ScenarioConfig;
use crate::analysis::{activation_density_series, AveragedSeries};
use crate::error::{Error, Result};
use crate::mas::{run, AgentColor, SimulationTrace};
use crate::seed::{stream_seed, sub_seed, Stream};
use crate::sir::{run_sir, SirTrace};

/// Averaged curves of a batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateSeries {
    /// Currently spreading or debunking agents over `n`.
    pub active: AveragedSeries,
    /// Per-color densities, keyed by color name.
    pub by_color: BTreeMap<String, AveragedSeries>,
    /// Cumulative fraction of agents ever activated.
    pub ever_activated: AveragedSeries,
    /// Spreader density of the SIR baseline, when configured.
    pub baseline_spreaders: Option<AveragedSeries>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateResult {
    pub scenario: String,
    pub config_hash: String,
    pub master_seed: u64,
    pub run_seeds: Vec<u64>,
    pub series: AggregateSeries,
    pub runs: Vec<SimulationTrace>,
    pub baseline_runs: Vec<SirTrace>,
}

impl AggregateResult {
    pub fn n_runs(&self) -> usize {
        self.runs.len()
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }
}

/// Seed of run `index` in a batch started from `master_seed`.
pub fn run_seed(master_seed: u64, index: usize) -> u64 {
    sub_seed(master_seed, index as u64)
}

/// Outcome of one run of a batch.
pub struct RunOutput {
    pub trace: SimulationTrace,
    pub baseline: Option<SirTrace>,
}

/// Runs a single member of a batch: builds its graph, the agent simulation
/// and, if configured, the SIR baseline on the same graph.
pub fn run_member(config: &ScenarioConfig, index: usize, seed: u64) -> Result<RunOutput> {
    let wrap = |e: Error| Error::Run {
        run: index,
        seed,
        source: Box::new(e),
    };
    let graph = config.graph_for_run(seed).map_err(wrap)?;
    let trace = run(&graph, &config.schedule, &config.params, config.max_cycles, seed).map_err(wrap)?;
    let baseline = config
        .baseline
        .as_ref()
        .map(|p| run_sir(&graph, p, config.max_cycles, stream_seed(seed, Stream::Baseline)))
        .transpose()
        .map_err(wrap)?;
    Ok(RunOutput { trace, baseline })
}

/// Runs every member of the scenario (in parallel) and aggregates them in run
/// order, so the result depends only on the config and `master_seed`.
pub fn batch_run(config: &ScenarioConfig, master_seed: u64) -> Result<AggregateResult> {
    config.validate()?;
    let run_seeds: Vec<u64> = (0..config.n_runs).map(|i| run_seed(master_seed, i)).collect();
    let outputs = run_seeds
        .par_iter()
        .enumerate()
        .map(|(i, &seed)| run_member(config, i, seed))
        .collect::<Result<Vec<_>>>()?;
    let (runs, baseline_runs): (Vec<_>, Vec<_>) = outputs.into_iter().map(|o| (o.trace, o.baseline)).unzip();
    let baseline_runs: Vec<SirTrace> = baseline_runs.into_iter().flatten().collect();
    let series = aggregate_series(&runs, &baseline_runs)?;
    Ok(AggregateResult {
        scenario: config.name.clone(),
        config_hash: config.config_hash(),
        master_seed,
        run_seeds,
        series,
        runs,
        baseline_runs,
    })
}

pub fn aggregate_series(runs: &[SimulationTrace], baseline: &[SirTrace]) -> Result<AggregateSeries> {
    let density = |f: &dyn Fn(&crate::mas::CycleRecord) -> usize| -> Result<AveragedSeries> {
        let per_run: Vec<Vec<f64>> = runs
            .iter()
            .map(|t| t.records.iter().map(|r| f(r) as f64 / t.n_nodes as f64).collect())
            .collect();
        AveragedSeries::from_runs(&per_run)
    };
    let mut by_color = BTreeMap::new();
    for color in AgentColor::ALL {
        by_color.insert(color.name().to_string(), density(&|r| r.counts.get(color))?);
    }
    Ok(AggregateSeries {
        active: activation_density_series(runs)?,
        by_color,
        ever_activated: density(&|r| r.ever_activated)?,
        baseline_spreaders: if baseline.is_empty() {
            None
        } else {
            Some(activation_density_series(baseline)?)
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(name: &str) -> ScenarioConfig {
        let mut c = ScenarioConfig::builtin(name).unwrap();
        c.network.nodes = 300;
        c.n_runs = 3;
        c.max_cycles = 120;
        c
    }

    #[test]
    fn single_run_equals_its_trace() {
        let mut c = small("true_news");
        c.n_runs = 1;
        let agg = batch_run(&c, 5).unwrap();
        let trace = &agg.runs[0];
        assert_eq!(agg.series.active.points.len(), trace.records.len());
        for (p, r) in agg.series.active.points.iter().zip(&trace.records) {
            assert_eq!(p.mean, r.counts.active() as f64 / 300.0);
            assert_eq!(p.stderr, 0.0);
        }
    }

    #[test]
    fn same_master_seed_same_bytes() {
        let c = small("hoax_debunk");
        let a = batch_run(&c, 77).unwrap().to_json().unwrap();
        let b = batch_run(&c, 77).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        let other = batch_run(&c, 78).unwrap().to_json().unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn fresh_policy_builds_distinct_graphs() {
        let c = small("true_news");
        let g0 = c.graph_for_run(run_seed(1, 0)).unwrap();
        let g1 = c.graph_for_run(run_seed(1, 1)).unwrap();
        assert_ne!(g0, g1);
        let fixed = c.with_override("graph", "fixed:4").unwrap();
        assert_eq!(
            fixed.graph_for_run(run_seed(1, 0)).unwrap(),
            fixed.graph_for_run(run_seed(1, 1)).unwrap()
        );
    }

    #[test]
    fn baseline_runs_alongside() {
        let agg = batch_run(&small("true_news"), 3).unwrap();
        assert_eq!(agg.baseline_runs.len(), 3);
        assert!(agg.series.baseline_spreaders.is_some());
        let hoax = batch_run(&small("hoax_debunk"), 3).unwrap();
        assert!(hoax.baseline_runs.is_empty());
        assert!(hoax.series.baseline_spreaders.is_none());
    }

    #[test]
    fn run_errors_name_the_seed() {
        let mut c = small("true_news");
        c.params.initial_spreaders = 10_000;
        let err = batch_run(&c, 1).unwrap_err();
        assert!(matches!(err, Error::Run { run: 0, .. }), "{err}");
        assert!(err.to_string().contains(&run_seed(1, 0).to_string()));
    }
}
