//! Scale-free graph generation and degree-distribution measurement.

mod export;
mod fit;
mod generate;
mod graph;

pub use export::{read_edge_list, write_degree_histogram_csv, write_edge_list, write_gexf, GexfAttribute, GexfValues};
pub use fit::{
    degree_histogram, fit_power_law, fit_power_law_with, gamma_ensemble, DegreeHistogram, EnsembleFit, PowerLawFit,
    DEFAULT_MIN_COUNT,
};
pub use generate::generate_ba;
pub use graph::Graph;
