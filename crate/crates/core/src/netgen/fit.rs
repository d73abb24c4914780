use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{generate_ba, Graph};
use crate::error::{Error, Result};
use crate::seed::sub_seed;

/// Exact count of nodes per degree class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub entries: BTreeMap<usize, usize>,
    pub n_nodes: usize,
}

impl DegreeHistogram {
    pub fn from_counts(entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let entries: BTreeMap<usize, usize> = entries.into_iter().filter(|&(_, c)| c > 0).collect();
        let n_nodes = entries.values().sum();
        DegreeHistogram { entries, n_nodes }
    }

    /// Relative frequency of degree `k`.
    pub fn frequency(&self, k: usize) -> f64 {
        self.entries.get(&k).copied().unwrap_or(0) as f64 / self.n_nodes as f64
    }

    pub fn mode(&self) -> Option<usize> {
        self.entries
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&k, _)| k)
    }
}

pub fn degree_histogram(g: &Graph) -> DegreeHistogram {
    let mut entries = BTreeMap::new();
    for i in 0..g.node_count() {
        *entries.entry(g.degree(i)).or_insert(0) += 1;
    }
    DegreeHistogram {
        entries,
        n_nodes: g.node_count(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub gamma_stat_err: f64,
    pub k_min: usize,
    /// Smallest class count entering the regression.
    pub min_count: usize,
    pub r_squared: f64,
    /// Number of degree classes entering the regression.
    pub n_points: usize,
}

/// Classes seen fewer times than this sit on the `1/n` frequency floor of a
/// finite sample and are left out of tail fits.
pub const DEFAULT_MIN_COUNT: usize = 2;

/// [`fit_power_law_with`] using [`DEFAULT_MIN_COUNT`].
pub fn fit_power_law(h: &DegreeHistogram, k_min: usize) -> Result<PowerLawFit> {
    fit_power_law_with(h, k_min, DEFAULT_MIN_COUNT)
}

/// Ordinary least squares of `ln f(k)` against `ln k` over the classes with
/// `k >= k_min` and at least `min_count` nodes. `gamma` is the negated slope
/// and `gamma_stat_err` the slope standard error taken from the fit
/// covariance matrix.
pub fn fit_power_law_with(h: &DegreeHistogram, k_min: usize, min_count: usize) -> Result<PowerLawFit> {
    let k_min = k_min.max(1);
    let min_count = min_count.max(1);
    let points: Vec<(f64, f64)> = h
        .entries
        .iter()
        .filter(|&(&k, &c)| k >= k_min && c >= min_count)
        .map(|(&k, &c)| ((k as f64).ln(), (c as f64 / h.n_nodes as f64).ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::InsufficientData {
            usable: points.len(),
        });
    }

    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &points {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ssr: f64 = points
        .iter()
        .map(|&(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let residual_var = ssr / (n - 2.0);
    let slope_err = (residual_var / sxx).sqrt();
    let r_squared = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };

    Ok(PowerLawFit {
        gamma: -slope,
        gamma_stat_err: slope_err,
        k_min,
        min_count,
        r_squared,
        n_points: points.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleFit {
    pub gamma_mean: f64,
    /// Sample standard deviation of the per-graph exponents.
    pub gamma_sys_err: f64,
    /// Mean of the per-graph regression errors.
    pub gamma_stat_err: f64,
    pub n_graphs: usize,
    pub fits: Vec<PowerLawFit>,
}

impl EnsembleFit {
    pub fn from_fits(fits: Vec<PowerLawFit>) -> Result<Self> {
        if fits.len() < 2 {
            return Err(Error::InvalidParameter(
                "an ensemble needs at least two fits".into(),
            ));
        }
        let n = fits.len() as f64;
        let gamma_mean = fits.iter().map(|f| f.gamma).sum::<f64>() / n;
        let var = fits
            .iter()
            .map(|f| (f.gamma - gamma_mean).powi(2))
            .sum::<f64>()
            / (n - 1.0);
        let gamma_stat_err = fits.iter().map(|f| f.gamma_stat_err).sum::<f64>() / n;
        Ok(EnsembleFit {
            gamma_mean,
            gamma_sys_err: var.sqrt(),
            gamma_stat_err,
            n_graphs: fits.len(),
            fits,
        })
    }
}

/// Fits `n_graphs` independent BA graphs, graph `i` grown from `sub_seed(seed, i)`.
pub fn gamma_ensemble(
    n_graphs: usize,
    n: usize,
    m: usize,
    k_min: usize,
    seed: u64,
) -> Result<EnsembleFit> {
    if n_graphs < 2 {
        return Err(Error::InvalidParameter(
            "an ensemble needs at least two graphs".into(),
        ));
    }
    let fits = (0..n_graphs)
        .into_par_iter()
        .map(|i| {
            let g = generate_ba(n, m, sub_seed(seed, i as u64))?;
            fit_power_law(&degree_histogram(&g), k_min)
        })
        .collect::<Result<Vec<_>>>()?;
    EnsembleFit::from_fits(fits)
}
