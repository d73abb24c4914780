//! Measurements over simulation results.

mod assortativity;
mod degree;
mod histogram;
mod series;
mod stats;
mod sweep;

pub use assortativity::{attribute_assortativity, echo_subgraph, AssortativityResult, ColorLabeling, EchoSubgraph};
pub use degree::{density_by_degree, DegreeClassDensity, DegreeClassPoint};
pub use histogram::{bimodal, local_maxima, threshold_histogram, ThresholdHistogram, BIMODAL_TROUGH_DEPTH, DEFAULT_BINS};
pub use series::{
    activation_density_series, count_maximal_plateaus, time_to_half_peak, ActivityTrace, AveragedSeries, SeriesPoint,
};
pub use stats::{mean_stderr, pooled_stderr};
pub use sweep::{assortativity_sweep, evaluate_point, parameter_sweep, AssortativityPoint, SweepOptions, SweepOutcome};
