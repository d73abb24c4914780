//! The agent-based diffusion model.

mod agent;
mod engine;
mod params;
mod schedule;
mod trace;

pub use agent::{init_population, AgentColor, AgentState, ThresholdDistribution};
pub use engine::{hub_degree_cutoff, run, Simulation, StepReport, COMPARE_TOL};
pub use params::ModelParams;
pub use schedule::{NewsSchedule, Segment};
pub use trace::{
    AgentSnapshot, ColorCounts, CycleRecord, SimulationTrace, SNAPSHOT_CSV_HEADER, TRACE_CSV_HEADER,
};
