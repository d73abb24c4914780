//! Built-in experiments, the scenario file format and the batch runner.

mod batch;
mod config;

pub use batch::{aggregate_series, batch_run, run_member, run_seed, AggregateResult, AggregateSeries, RunOutput};
pub use config::{
    echo_reliabilities, linspace, GraphPolicy, NetworkConfig, ScenarioConfig, DEFAULT_MAX_CYCLES, ECHO_VISIBILITY,
    HOAX_SIZES,
};
