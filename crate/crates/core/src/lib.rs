//! Agent-based simulation of rumor and misinformation spreading on
//! Barabási-Albert scale-free networks, an SIR rumor baseline, and the
//! measurements used to analyse both.

pub mod analysis;
pub mod error;
pub mod mas;
pub mod netgen;
pub mod scenario;
pub mod seed;
pub mod sir;

pub use error::{Error, Result};
pub use mas::{AgentColor, ModelParams, NewsSchedule, SimulationTrace};
pub use netgen::Graph;
pub use scenario::{AggregateResult, ScenarioConfig};
pub use sir::{SirParams, SirTrace};
