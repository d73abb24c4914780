use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mas::AgentSnapshot;

pub const DEFAULT_BINS: usize = 20;

/// Pooled, normalized histogram of final skepticism thresholds over [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdHistogram {
    pub bin_edges: Vec<f64>,
    pub frequencies: Vec<f64>,
    pub reliability: f64,
    pub n_runs: usize,
}

pub fn threshold_histogram<'a>(
    runs: impl IntoIterator<Item = &'a [AgentSnapshot]>,
    bins: usize,
    reliability: f64,
) -> Result<ThresholdHistogram> {
    if bins < 10 {
        return Err(Error::InvalidParameter(format!(
            "threshold histograms need at least 10 bins, got {bins}"
        )));
    }
    let mut counts = vec![0usize; bins];
    let mut n_runs = 0;
    let mut total = 0usize;
    for snapshot in runs {
        n_runs += 1;
        for a in snapshot {
            let idx = ((a.threshold_final * bins as f64).floor() as usize).min(bins - 1);
            counts[idx] += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptyInput("no agents to histogram"));
    }
    Ok(ThresholdHistogram {
        bin_edges: (0..=bins).map(|i| i as f64 / bins as f64).collect(),
        frequencies: counts.iter().map(|&c| c as f64 / total as f64).collect(),
        reliability,
        n_runs,
    })
}

impl ThresholdHistogram {
    pub fn bins(&self) -> usize {
        self.frequencies.len()
    }

    /// Three-bin moving average; the end bins average over their two available values.
    pub fn smoothed(&self) -> Vec<f64> {
        let f = &self.frequencies;
        (0..f.len())
            .map(|i| {
                let lo = i.saturating_sub(1);
                let hi = (i + 1).min(f.len() - 1);
                f[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
            })
            .collect()
    }

    /// Whether the smoothed histogram has two local maxima separated by a
    /// trough at least `BIMODAL_TROUGH_DEPTH` below the smaller of the two.
    pub fn is_bimodal(&self) -> bool {
        bimodal(&self.smoothed())
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "bin_low,bin_high,frequency")?;
        for (i, f) in self.frequencies.iter().enumerate() {
            writeln!(w, "{},{},{}", self.bin_edges[i], self.bin_edges[i + 1], f)?;
        }
        Ok(())
    }
}

/// Relative depth a trough must reach below the lower of two peaks.
pub const BIMODAL_TROUGH_DEPTH: f64 = 0.20;

/// Indices of interior local maxima: strictly above the left neighbor and
/// not below the right one, so a flat top counts once. The end bins hold
/// mass clamped at 0 or 1 and are never reported as modes.
pub fn local_maxima(s: &[f64]) -> Vec<usize> {
    (1..s.len().saturating_sub(1))
        .filter(|&i| s[i] > s[i - 1] && s[i] >= s[i + 1])
        .collect()
}

pub fn bimodal(s: &[f64]) -> bool {
    let peaks = local_maxima(s);
    for (a, &p) in peaks.iter().enumerate() {
        for &q in &peaks[a + 1..] {
            let lower_peak = s[p].min(s[q]);
            let trough = s[p..=q].iter().copied().fold(f64::INFINITY, f64::min);
            if lower_peak > 0.0 && trough <= (1.0 - BIMODAL_TROUGH_DEPTH) * lower_peak {
                return true;
            }
        }
    }
    false
}
