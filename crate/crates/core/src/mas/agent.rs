use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Beta, Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netgen::Graph;
use crate::seed::rng_from_seed;

/// Agent state class. Display names follow the colors used to draw the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentColor {
    /// Has not acted on the news (red).
    Undeployed,
    /// Saw the news and believed it (blue).
    Spontaneous,
    /// Tipped by collective influence of its neighborhood (green).
    Influenced,
    /// Tipped by messages from spreading friends (yellow).
    Persuaded,
    /// Rejects the news and spreads the correction (orange).
    Debunker,
    /// Stopped acting; absorbing (grey).
    Inactive,
}

impl AgentColor {
    pub const ALL: [AgentColor; 6] = [
        AgentColor::Undeployed,
        AgentColor::Spontaneous,
        AgentColor::Influenced,
        AgentColor::Persuaded,
        AgentColor::Debunker,
        AgentColor::Inactive,
    ];

    pub fn is_spreader(self) -> bool {
        matches!(
            self,
            AgentColor::Spontaneous | AgentColor::Influenced | AgentColor::Persuaded
        )
    }

    /// Spreading or debunking right now.
    pub fn is_active(self) -> bool {
        self.is_spreader() || self == AgentColor::Debunker
    }

    pub fn name(self) -> &'static str {
        match self {
            AgentColor::Undeployed => "undeployed",
            AgentColor::Spontaneous => "spontaneous",
            AgentColor::Influenced => "influenced",
            AgentColor::Persuaded => "persuaded",
            AgentColor::Debunker => "debunker",
            AgentColor::Inactive => "inactive",
        }
    }

    pub fn display_color(self) -> &'static str {
        match self {
            AgentColor::Undeployed => "red",
            AgentColor::Spontaneous => "blue",
            AgentColor::Influenced => "green",
            AgentColor::Persuaded => "yellow",
            AgentColor::Debunker => "orange",
            AgentColor::Inactive => "grey",
        }
    }

    /// Whether `self -> next` is a legal transition of the agent state machine.
    pub fn can_become(self, next: AgentColor) -> bool {
        use AgentColor::*;
        if self == next {
            return true;
        }
        match self {
            Undeployed => next != Inactive,
            Spontaneous | Influenced | Persuaded => matches!(next, Debunker | Inactive),
            Debunker => next == Inactive,
            Inactive => false,
        }
    }
}

impl fmt::Display for AgentColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AgentColor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AgentColor::ALL
            .into_iter()
            .find(|c| c.name() == s || c.display_color() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown agent color `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    pub threshold: f64,
    pub initial_threshold: f64,
    pub color: AgentColor,
    pub activated_at: Option<u32>,
    /// Agents that sent persuasion messages while this one was undeployed. Sorted.
    pub contacted_by: Vec<u32>,
    /// Color held while active; kept after deactivation.
    pub last_active_color: Option<AgentColor>,
}

impl AgentState {
    pub fn new(threshold: f64) -> Self {
        AgentState {
            threshold,
            initial_threshold: threshold,
            color: AgentColor::Undeployed,
            activated_at: None,
            contacted_by: Vec::new(),
            last_active_color: None,
        }
    }

    pub(crate) fn activate(&mut self, color: AgentColor, cycle: u32) {
        debug_assert!(color.is_active());
        self.color = color;
        self.activated_at = Some(cycle);
        self.last_active_color = Some(color);
    }

    pub(crate) fn record_contact(&mut self, sender: usize) {
        let sender = sender as u32;
        if let Err(pos) = self.contacted_by.binary_search(&sender) {
            self.contacted_by.insert(pos, sender);
        }
    }
}

/// Distribution of the initial skepticism thresholds. Samples are clamped to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "distribution", rename_all = "snake_case")]
pub enum ThresholdDistribution {
    Constant { value: f64 },
    Uniform { low: f64, high: f64 },
    Normal { mean: f64, std_dev: f64 },
    Beta { alpha: f64, beta: f64 },
}

impl Default for ThresholdDistribution {
    fn default() -> Self {
        ThresholdDistribution::Uniform { low: 0.0, high: 1.0 }
    }
}

impl ThresholdDistribution {
    /// Builds a distribution from its name and positional parameters.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self> {
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "distribution `{name}` takes {k} parameters, got {}",
                    params.len()
                )))
            }
        };
        let dist = match name {
            "constant" => {
                want(1)?;
                ThresholdDistribution::Constant { value: params[0] }
            }
            "uniform" => {
                want(2)?;
                ThresholdDistribution::Uniform {
                    low: params[0],
                    high: params[1],
                }
            }
            "normal" => {
                want(2)?;
                ThresholdDistribution::Normal {
                    mean: params[0],
                    std_dev: params[1],
                }
            }
            "beta" => {
                want(2)?;
                ThresholdDistribution::Beta {
                    alpha: params[0],
                    beta: params[1],
                }
            }
            other => return Err(Error::UnknownDistribution(other.to_string())),
        };
        dist.validate()?;
        Ok(dist)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ThresholdDistribution::Constant { value } => (0.0..=1.0).contains(&value),
            ThresholdDistribution::Uniform { low, high } => 0.0 <= low && low <= high && high <= 1.0,
            ThresholdDistribution::Normal { std_dev, mean } => std_dev >= 0.0 && mean.is_finite(),
            ThresholdDistribution::Beta { alpha, beta } => alpha > 0.0 && beta > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "invalid threshold distribution {self:?}"
            )))
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let x = match *self {
            ThresholdDistribution::Constant { value } => value,
            ThresholdDistribution::Uniform { low, high } => {
                if low == high {
                    low
                } else {
                    rng.random_range(low..=high)
                }
            }
            ThresholdDistribution::Normal { mean, std_dev } => Normal::new(mean, std_dev)
                .expect("validated normal parameters")
                .sample(rng),
            ThresholdDistribution::Beta { alpha, beta } => Beta::new(alpha, beta)
                .expect("validated beta parameters")
                .sample(rng),
        };
        x.clamp(0.0, 1.0)
    }
}

/// One undeployed agent per node with i.i.d. thresholds.
pub fn init_population(g: &Graph, dist: &ThresholdDistribution, seed: u64) -> Result<Vec<AgentState>> {
    dist.validate()?;
    let mut rng = rng_from_seed(seed);
    Ok((0..g.node_count())
        .map(|_| AgentState::new(dist.sample(&mut rng)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::generate_ba;

    #[test]
    fn constant_population() {
        let g = generate_ba(50, 2, 0).unwrap();
        let agents = init_population(&g, &ThresholdDistribution::Constant { value: 0.5 }, 3).unwrap();
        assert_eq!(agents.len(), 50);
        assert!(agents.iter().all(|a| a.threshold == 0.5 && a.color == AgentColor::Undeployed));
    }

    #[test]
    fn uniform_population_mean_and_determinism() {
        let g = generate_ba(10_000, 2, 1).unwrap();
        let dist = ThresholdDistribution::default();
        let a = init_population(&g, &dist, 7).unwrap();
        let b = init_population(&g, &dist, 7).unwrap();
        assert_eq!(a, b);
        let mean = a.iter().map(|x| x.threshold).sum::<f64>() / a.len() as f64;
        assert!((0.49..=0.51).contains(&mean), "mean {mean}");
    }

    #[test]
    fn named_distributions() {
        assert_eq!(
            ThresholdDistribution::from_name("uniform", &[0.0, 1.0]).unwrap(),
            ThresholdDistribution::default()
        );
        assert!(matches!(
            ThresholdDistribution::from_name("pareto", &[1.0]),
            Err(Error::UnknownDistribution(_))
        ));
        assert!(ThresholdDistribution::from_name("uniform", &[0.5]).is_err());
        let normal = ThresholdDistribution::from_name("normal", &[0.5, 2.0]).unwrap();
        let mut rng = rng_from_seed(1);
        assert!((0..1000).map(|_| normal.sample(&mut rng)).all(|x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn transition_table() {
        use AgentColor::*;
        assert!(Undeployed.can_become(Debunker));
        assert!(!Undeployed.can_become(Inactive));
        assert!(Persuaded.can_become(Debunker));
        assert!(!Persuaded.can_become(Spontaneous));
        assert!(!Debunker.can_become(Spontaneous));
        assert!(!Inactive.can_become(Undeployed));
        assert_eq!("orange".parse::<AgentColor>().unwrap(), Debunker);
    }

    #[test]
    fn contacts_stay_sorted_and_unique() {
        let mut a = AgentState::new(0.3);
        for s in [5, 1, 5, 3, 1] {
            a.record_contact(s);
        }
        assert_eq!(a.contacted_by, vec![1, 3, 5]);
    }
}
