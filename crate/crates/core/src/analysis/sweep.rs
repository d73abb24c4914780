//! Parameter sweeps: threshold polarization and color assortativity per grid point.

use serde::{Deserialize, Serialize};

use super::stats::mean_stderr;
use super::{echo_subgraph, threshold_histogram, AveragedSeries, ColorLabeling, ThresholdHistogram, DEFAULT_BINS};
use crate::error::{Error, Result};
use crate::scenario::{batch_run, ScenarioConfig};
use crate::seed::sub_seed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub bins: usize,
    /// Edges of the diffusion subgraph are kept only between agents whose
    /// final thresholds differ by at most this much. 1.0 keeps every edge.
    pub delta_th: f64,
    pub labeling: ColorLabeling,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            bins: DEFAULT_BINS,
            delta_th: 1.0,
            labeling: ColorLabeling::default(),
        }
    }
}

/// Mean color assortativity at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssortativityPoint {
    pub value: f64,
    /// NaN when no run gave a defined coefficient.
    pub mean: f64,
    pub stderr: f64,
    pub n_defined: usize,
    /// Runs whose subgraph had a single color or no edges.
    pub n_undefined: usize,
    /// Fewer than two defined runs, so `stderr` carries no information.
    pub degenerate_statistics: bool,
}

impl AssortativityPoint {
    pub fn from_runs(value: f64, per_run: &[Option<f64>]) -> Self {
        let defined: Vec<f64> = per_run.iter().flatten().copied().collect();
        let (mean, stderr) = if defined.is_empty() {
            (f64::NAN, f64::NAN)
        } else {
            mean_stderr(&defined)
        };
        AssortativityPoint {
            value,
            mean,
            stderr,
            n_defined: defined.len(),
            n_undefined: per_run.len() - defined.len(),
            degenerate_statistics: defined.len() < 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    /// Value of the swept parameter.
    pub value: f64,
    /// Reliability in force at the end of the schedule.
    pub reliability: f64,
    pub config_hash: String,
    pub master_seed: u64,
    pub run_seeds: Vec<u64>,
    pub histogram: ThresholdHistogram,
    pub assortativity: AssortativityPoint,
    pub per_run_assortativity: Vec<Option<f64>>,
    pub active: AveragedSeries,
}

/// Runs one batch and reduces it to its sweep measurements.
pub fn evaluate_point(config: &ScenarioConfig, value: f64, master_seed: u64, opts: &SweepOptions) -> Result<SweepOutcome> {
    let agg = batch_run(config, master_seed)?;
    let reliability = config
        .schedule
        .segments()
        .last()
        .expect("schedules are non-empty")
        .reliability;
    let mut per_run = Vec::with_capacity(agg.runs.len());
    for (trace, &seed) in agg.runs.iter().zip(&agg.run_seeds) {
        let g = config.graph_for_run(seed)?;
        let echo = echo_subgraph(&g, &trace.snapshot, opts.delta_th);
        per_run.push(echo.assortativity(opts.labeling).ok().map(|r| r.coefficient));
    }
    let histogram = threshold_histogram(agg.runs.iter().map(|t| t.snapshot.as_slice()), opts.bins, reliability)?;
    Ok(SweepOutcome {
        value,
        reliability,
        config_hash: agg.config_hash,
        master_seed,
        run_seeds: agg.run_seeds,
        histogram,
        assortativity: AssortativityPoint::from_runs(value, &per_run),
        per_run_assortativity: per_run,
        active: agg.series.active,
    })
}

/// Sweeps `key` (any key accepted by [`ScenarioConfig::set`]) over `values`,
/// running `n_runs` simulations per point. Point `i` uses master seed
/// `sub_seed(seed, i)`.
pub fn parameter_sweep(
    base: &ScenarioConfig,
    key: &str,
    values: &[f64],
    n_runs: usize,
    seed: u64,
    opts: &SweepOptions,
) -> Result<Vec<SweepOutcome>> {
    if values.is_empty() {
        return Err(Error::EmptyInput("sweep grid"));
    }
    values
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut config = base.with_override(key, &x.to_string())?;
            config.n_runs = n_runs;
            evaluate_point(&config, x, sub_seed(seed, i as u64), opts)
        })
        .collect()
}

/// Mean color assortativity of the diffusion subgraph for each reliability,
/// with the scenario for a reliability supplied by `family`.
pub fn assortativity_sweep(
    family: impl Fn(f64) -> Result<ScenarioConfig>,
    reliabilities: &[f64],
    n_runs: usize,
    seed: u64,
    opts: &SweepOptions,
) -> Result<Vec<AssortativityPoint>> {
    if reliabilities.len() < 2 {
        return Err(Error::InvalidParameter(
            "an assortativity sweep needs at least two reliabilities".into(),
        ));
    }
    reliabilities
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut config = family(r)?;
            config.n_runs = n_runs;
            Ok(evaluate_point(&config, r, sub_seed(seed, i as u64), opts)?.assortativity)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_statistics() {
        let p = AssortativityPoint::from_runs(0.5, &[Some(0.2), None, Some(0.4)]);
        assert!((p.mean - 0.3).abs() < 1e-12);
        assert_eq!((p.n_defined, p.n_undefined), (2, 1));
        assert!(!p.degenerate_statistics);
        let single = AssortativityPoint::from_runs(0.5, &[Some(0.2)]);
        assert_eq!(single.stderr, 0.0);
        assert!(single.degenerate_statistics);
        assert!(AssortativityPoint::from_runs(0.5, &[None]).mean.is_nan());
    }

    #[test]
    fn small_sweep_runs() {
        let family = |r: f64| {
            let mut c = ScenarioConfig::echo(r, 100)?;
            c.max_cycles = 200;
            Ok(c)
        };
        let pts = assortativity_sweep(family, &[0.5, 0.9], 1, 3, &SweepOptions::default()).unwrap();
        assert_eq!(pts.len(), 2);
        for p in pts.iter().filter(|p| p.n_defined == 1) {
            assert_eq!(p.stderr, 0.0);
            assert!(p.degenerate_statistics);
        }
        assert!(assortativity_sweep(family, &[0.5], 1, 3, &SweepOptions::default()).is_err());
    }

    #[test]
    fn parameter_grid_points_are_independent() {
        let mut base = ScenarioConfig::echo(0.5, 150).unwrap();
        base.max_cycles = 150;
        let out = parameter_sweep(&base, "reliability", &[0.5, 0.7], 2, 9, &SweepOptions::default()).unwrap();
        assert_eq!(out[1].reliability, 0.7);
        assert_ne!(out[0].master_seed, out[1].master_seed);
        assert_eq!(out[0].run_seeds.len(), 2);
        assert!((out[0].histogram.frequencies.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}
