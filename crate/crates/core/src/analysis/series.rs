use std::io::Write;

use serde::{Deserialize, Serialize};

use super::stats::mean_stderr;
use crate::error::{Error, Result};
use crate::mas::SimulationTrace;
use crate::sir::SirTrace;

/// A run whose per-cycle activity can be averaged with others.
pub trait ActivityTrace {
    fn n_nodes(&self) -> usize;
    fn cycles(&self) -> usize;
    /// Agents actively spreading after `cycle`.
    fn active_at(&self, cycle: usize) -> usize;
}

impl ActivityTrace for SimulationTrace {
    fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    fn cycles(&self) -> usize {
        self.records.len()
    }

    fn active_at(&self, cycle: usize) -> usize {
        self.records[cycle].counts.active()
    }
}

impl ActivityTrace for SirTrace {
    fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    fn cycles(&self) -> usize {
        self.records.len()
    }

    fn active_at(&self, cycle: usize) -> usize {
        self.records[cycle].counts.spreaders
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub cycle: usize,
    pub mean: f64,
    pub stderr: f64,
}

/// Per-cycle mean over runs, with standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragedSeries {
    pub points: Vec<SeriesPoint>,
    pub n_runs: usize,
}

impl AveragedSeries {
    /// Averages per-run series cycle by cycle. Shorter runs are padded with
    /// their last value, since a finished run stays in its terminal state.
    pub fn from_runs(runs: &[Vec<f64>]) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::EmptyInput("no runs to average"));
        }
        let len = runs.iter().map(Vec::len).max().unwrap_or(0);
        let mut column = Vec::with_capacity(runs.len());
        let points = (0..len)
            .map(|cycle| {
                column.clear();
                column.extend(runs.iter().map(|r| match r.get(cycle) {
                    Some(&x) => x,
                    None => r.last().copied().unwrap_or(0.0),
                }));
                let (mean, stderr) = mean_stderr(&column);
                SeriesPoint { cycle, mean, stderr }
            })
            .collect();
        Ok(AveragedSeries {
            points,
            n_runs: runs.len(),
        })
    }

    pub fn means(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.mean).collect()
    }

    pub fn peak(&self) -> Option<SeriesPoint> {
        self.points
            .iter()
            .copied()
            .fold(None, |best: Option<SeriesPoint>, p| match best {
                Some(b) if b.mean >= p.mean => Some(b),
                _ => Some(p),
            })
    }

    /// Mean of the averaged curve over cycles `from..to` (clipped to the series).
    pub fn window_mean(&self, from: usize, to: usize) -> f64 {
        let slice = &self.points[from.min(self.points.len())..to.min(self.points.len())];
        if slice.is_empty() {
            return 0.0;
        }
        slice.iter().map(|p| p.mean).sum::<f64>() / slice.len() as f64
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "x,mean,stderr")?;
        for p in &self.points {
            writeln!(w, "{},{},{}", p.cycle, p.mean, p.stderr)?;
        }
        Ok(())
    }
}

/// Density of actively spreading agents per cycle, averaged over runs.
pub fn activation_density_series<T: ActivityTrace>(traces: &[T]) -> Result<AveragedSeries> {
    if traces.is_empty() {
        return Err(Error::EmptyInput("no traces"));
    }
    let n = traces[0].n_nodes();
    if traces.iter().any(|t| t.n_nodes() != n) {
        return Err(Error::InvalidParameter(
            "traces come from graphs of different sizes".into(),
        ));
    }
    let runs: Vec<Vec<f64>> = traces
        .iter()
        .map(|t| (0..t.cycles()).map(|c| t.active_at(c) as f64 / n as f64).collect())
        .collect();
    AveragedSeries::from_runs(&runs)
}

/// First cycle at which `values` reaches half of its maximum.
pub fn time_to_half_peak(values: &[f64]) -> Option<usize> {
    let peak = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if peak.is_nan() || peak <= 0.0 {
        return None;
    }
    values.iter().position(|&x| x >= peak / 2.0)
}

/// Number of separate maximal plateaus: maximal runs of cycles at the global
/// maximum of `values` (within `tol`), counted so that a plateau interrupted
/// by a dip is counted twice.
pub fn count_maximal_plateaus(values: &[f64], tol: f64) -> usize {
    let peak = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut count = 0;
    let mut inside = false;
    for &x in values {
        let at_top = x >= peak - tol;
        if at_top && !inside {
            count += 1;
        }
        inside = at_top;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_run_is_reproduced_with_zero_error() {
        let s = AveragedSeries::from_runs(&[vec![0.1, 0.5, 0.2]]).unwrap();
        assert_eq!(s.means(), vec![0.1, 0.5, 0.2]);
        assert!(s.points.iter().all(|p| p.stderr == 0.0));
        let twins = AveragedSeries::from_runs(&[vec![0.1, 0.4], vec![0.1, 0.4]]).unwrap();
        assert!(twins.points.iter().all(|p| p.stderr == 0.0));
    }

    #[test]
    fn shorter_runs_padded_with_terminal_value() {
        let s = AveragedSeries::from_runs(&[vec![0.2, 0.4, 0.6, 0.8], vec![0.0, 0.2]]).unwrap();
        assert_eq!(s.points.len(), 4);
        assert!((s.points[3].mean - 0.5).abs() < 1e-12);
        assert!(AveragedSeries::from_runs(&[]).is_err());
    }

    #[test]
    fn half_peak_and_plateaus() {
        let xs = [0.0, 0.1, 0.3, 0.6, 0.5, 0.1];
        assert_eq!(time_to_half_peak(&xs), Some(2));
        assert_eq!(time_to_half_peak(&[0.0, 0.0]), None);
        assert_eq!(count_maximal_plateaus(&xs, 0.0), 1);
        assert_eq!(count_maximal_plateaus(&[0.0, 1.0, 0.5, 1.0], 1e-9), 2);
        assert_eq!(count_maximal_plateaus(&[0.0, 1.0, 1.0, 0.0], 1e-9), 1);
    }

    #[test]
    fn window_mean_clips() {
        let s = AveragedSeries::from_runs(&[vec![1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(s.window_mean(1, 10), 2.5);
        assert_eq!(s.window_mean(5, 10), 0.0);
        assert_eq!(s.peak().unwrap().cycle, 2);
    }
}
