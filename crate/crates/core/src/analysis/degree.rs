use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::stats::mean_stderr;
use crate::mas::AgentSnapshot;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeClassPoint {
    pub k: usize,
    /// Mean fraction of the class ever activated, over runs where the class occurs.
    pub mean: f64,
    pub stderr: f64,
    /// Runs in which the class occurs.
    pub n_occurrences: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeClassDensity {
    pub classes: Vec<DegreeClassPoint>,
}

impl DegreeClassDensity {
    pub fn get(&self, k: usize) -> Option<&DegreeClassPoint> {
        self.classes
            .binary_search_by_key(&k, |c| c.k)
            .ok()
            .map(|i| &self.classes[i])
    }

    /// Unweighted mean of the class densities over classes with `k` in `range`.
    pub fn mean_over(&self, range: impl std::ops::RangeBounds<usize>) -> Option<f64> {
        let vals: Vec<f64> = self
            .classes
            .iter()
            .filter(|c| range.contains(&c.k))
            .map(|c| c.mean)
            .collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "x,mean,stderr")?;
        for c in &self.classes {
            writeln!(w, "{},{},{}", c.k, c.mean, c.stderr)?;
        }
        Ok(())
    }
}

/// Fraction of each degree class ever activated, averaged over runs. Each run
/// may come from its own graph; snapshots carry node degrees. Classes absent
/// from every run are omitted.
pub fn density_by_degree<'a>(runs: impl IntoIterator<Item = &'a [AgentSnapshot]>) -> DegreeClassDensity {
    let mut per_class: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for snapshot in runs {
        let mut tally: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for a in snapshot {
            let e = tally.entry(a.degree).or_default();
            e.0 += 1;
            if a.activated_at.is_some() {
                e.1 += 1;
            }
        }
        for (k, (total, active)) in tally {
            per_class.entry(k).or_default().push(active as f64 / total as f64);
        }
    }
    let classes = per_class
        .into_iter()
        .map(|(k, xs)| {
            let (mean, stderr) = mean_stderr(&xs);
            DegreeClassPoint {
                k,
                mean,
                stderr,
                n_occurrences: xs.len(),
            }
        })
        .collect();
    DegreeClassDensity { classes }
}
