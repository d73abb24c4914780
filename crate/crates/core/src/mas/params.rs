use serde::{Deserialize, Serialize};

use super::ThresholdDistribution;
use crate::error::{Error, Result};

/// Behavioural parameters of the agent model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    /// Collective influence fires when strictly more than this fraction of
    /// an agent's neighbors are spreading.
    pub influence_fraction: f64,
    /// Nodes in this top fraction of the degree ranking count as hubs; a
    /// single spreading hub neighbor also triggers collective influence.
    /// Zero disables hubs.
    pub hub_degree_quantile: f64,
    pub delta_influence: f64,
    pub delta_persuasion: f64,
    /// Two agents have similar preparation when their thresholds differ by
    /// at most this much.
    pub epsilon_similarity: f64,
    /// Cycles an agent stays active before switching off for good.
    pub t_active: u32,
    /// Minimum `threshold - r` for a visualizing agent to become a debunker.
    pub debunk_margin: f64,
    pub debunking_enabled: bool,
    /// Randomly chosen agents that start as spontaneous spreaders at cycle 0.
    pub initial_spreaders: usize,
    pub thresholds: ThresholdDistribution,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            influence_fraction: 0.30,
            hub_degree_quantile: 0.01,
            delta_influence: 0.10,
            delta_persuasion: 0.10,
            epsilon_similarity: 0.30,
            t_active: 15,
            debunk_margin: 0.20,
            debunking_enabled: false,
            initial_spreaders: 0,
            thresholds: ThresholdDistribution::default(),
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, x: f64| {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must lie in [0, 1], got {x}")))
            }
        };
        if !(self.influence_fraction > 0.0 && self.influence_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "influence_fraction must lie in (0, 1], got {}",
                self.influence_fraction
            )));
        }
        unit("hub_degree_quantile", self.hub_degree_quantile)?;
        unit("delta_influence", self.delta_influence)?;
        unit("delta_persuasion", self.delta_persuasion)?;
        unit("epsilon_similarity", self.epsilon_similarity)?;
        unit("debunk_margin", self.debunk_margin)?;
        if self.t_active < 1 {
            return Err(Error::InvalidParameter("t_active must be at least 1".into()));
        }
        self.thresholds.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ModelParams::default().validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range() {
        let bad = [
            ModelParams { influence_fraction: 0.0, ..Default::default() },
            ModelParams { delta_influence: 1.5, ..Default::default() },
            ModelParams { t_active: 0, ..Default::default() },
            ModelParams { epsilon_similarity: -0.1, ..Default::default() },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }
}
