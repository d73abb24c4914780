use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use rumor_core::analysis::{
    activation_density_series, density_by_degree, echo_subgraph, threshold_histogram, AssortativityPoint,
    ColorLabeling, SeriesPoint, SweepOptions,
};
use rumor_core::mas::SimulationTrace;
use rumor_core::netgen::{write_edge_list, Graph};
use rumor_core::scenario::{aggregate_series, run_member, run_seed, RunOutput};
use rumor_core::{ScenarioConfig, SirTrace};

use crate::failure::Failure;
use crate::output::Staging;

mod analyze;
mod batch;
mod dump;
mod generate;
mod run;
mod sweep;

pub use analyze::analyze;
pub use batch::batch;
pub use dump::dump_scenario;
pub use generate::generate;
pub use run::run;
pub use sweep::sweep;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One member of a batch, successful or not.
pub struct Member {
    pub index: usize,
    pub seed: u64,
    pub outcome: Result<(Graph, RunOutput), String>,
}

/// Runs members `0..n_runs` of `config` in parallel. Results come back in run
/// order and do not depend on the thread count.
pub fn execute(config: &ScenarioConfig, master_seed: u64, n_runs: usize) -> Vec<Member> {
    (0..n_runs)
        .into_par_iter()
        .map(|index| {
            let seed = run_seed(master_seed, index);
            let outcome = config
                .graph_for_run(seed)
                .and_then(|g| run_member(config, index, seed).map(|out| (g, out)))
                .map_err(|e| e.to_string());
            Member { index, seed, outcome }
        })
        .collect()
}

/// Files of a single run: what `run` writes and what `analyze` reads back.
pub fn write_run_artifacts(
    st: &Staging,
    dir: &Path,
    graph: &Graph,
    out: &RunOutput,
    delta_th: f64,
) -> Result<(), Failure> {
    st.write(dir.join("trace.csv"), |w| out.trace.write_csv(w))?;
    st.write(dir.join("snapshot.csv"), |w| out.trace.write_snapshot_csv(w))?;
    st.write_str(dir.join("trace.json"), &out.trace.to_json()?)?;
    st.write(dir.join("graph.edgelist"), |w| write_edge_list(graph, w))?;
    st.write(dir.join("echo.gexf"), |w| echo_subgraph(graph, &out.trace.snapshot, delta_th).write_gexf(w))?;
    if let Some(sir) = &out.baseline {
        st.write(dir.join("sir_trace.csv"), |w| sir.write_csv(w))?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct RunEntry {
    pub index: usize,
    pub seed: u64,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<usize>,
}

impl RunEntry {
    pub fn of(m: &Member) -> Self {
        match &m.outcome {
            Ok((_, out)) => RunEntry {
                index: m.index,
                seed: m.seed,
                status: "ok",
                error: None,
                cycles: Some(out.trace.records.len()),
            },
            Err(e) => RunEntry {
                index: m.index,
                seed: m.seed,
                status: "failed",
                error: Some(e.clone()),
                cycles: None,
            },
        }
    }
}

/// A successful run as seen by the reports.
pub struct RunView<'a> {
    pub index: usize,
    pub seed: u64,
    pub trace: &'a SimulationTrace,
    pub baseline: Option<&'a SirTrace>,
    pub graph: Option<&'a Graph>,
}

pub fn successes(members: &[Member]) -> Vec<RunView<'_>> {
    members
        .iter()
        .filter_map(|m| {
            let (g, out) = m.outcome.as_ref().ok()?;
            Some(RunView {
                index: m.index,
                seed: m.seed,
                trace: &out.trace,
                baseline: out.baseline.as_ref(),
                graph: Some(g),
            })
        })
        .collect()
}

/// Headline numbers of a set of runs, written as `summary.json`.
#[derive(Debug, Serialize)]
pub struct Summary {
    pub n_runs: usize,
    pub reliability: f64,
    pub peak_active: Option<SeriesPoint>,
    pub final_ever_activated: f64,
    pub bimodal: bool,
    /// Bins of the smoothed histogram's interior modes.
    pub histogram_modes: Vec<usize>,
    pub labeling: ColorLabeling,
    pub delta_th: f64,
    /// Absent when no run had a graph to measure.
    pub assortativity: Option<AssortativityPoint>,
}

fn validate_options(opts: &SweepOptions) -> Result<(), Failure> {
    if opts.bins < 10 {
        return Err(Failure::config(format!("--bins must be at least 10, got {}", opts.bins)));
    }
    if !(opts.delta_th >= 0.0 && opts.delta_th.is_finite()) {
        return Err(Failure::config(format!("--delta-th must be a finite value >= 0, got {}", opts.delta_th)));
    }
    Ok(())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes the aggregate reports of `runs` under `dir` and returns their summary.
///
/// `series/` holds the averaged curves (`active`, `ever_activated`, one per
/// color, and `sir_spreaders` with a baseline); next to it go
/// `degree_density.csv`, `threshold_histogram.csv` and `assortativity.csv`.
pub fn write_reports(st: &Staging, dir: &Path, runs: &[RunView], opts: &SweepOptions) -> Result<Summary, Failure> {
    let traces: Vec<SimulationTrace> = runs.iter().map(|r| r.trace.clone()).collect();
    let baselines: Vec<SirTrace> = runs.iter().filter_map(|r| r.baseline.cloned()).collect();
    let baselines = if baselines.len() == runs.len() { baselines } else { Vec::new() };
    let series = aggregate_series(&traces, &baselines)?;
    let series_dir = dir.join("series");
    st.write(series_dir.join("active.csv"), |w| series.active.write_csv(w))?;
    st.write(series_dir.join("ever_activated.csv"), |w| series.ever_activated.write_csv(w))?;
    for (name, s) in &series.by_color {
        st.write(series_dir.join(format!("{name}.csv")), |w| s.write_csv(w))?;
    }
    if !baselines.is_empty() {
        let sir = activation_density_series(&baselines)?;
        st.write(series_dir.join("sir_spreaders.csv"), |w| sir.write_csv(w))?;
    }

    let density = density_by_degree(traces.iter().map(|t| t.snapshot.as_slice()));
    st.write(dir.join("degree_density.csv"), |w| density.write_csv(w))?;

    let reliability = traces[0]
        .schedule
        .segments()
        .last()
        .expect("schedules are non-empty")
        .reliability;
    let histogram = threshold_histogram(traces.iter().map(|t| t.snapshot.as_slice()), opts.bins, reliability)?;
    st.write(dir.join("threshold_histogram.csv"), |w| histogram.write_csv(w))?;

    let mut table = String::from("run,seed,nodes,edges,r_color,r_role\n");
    let mut chosen = Vec::new();
    let mut measured = false;
    for r in runs {
        let Some(g) = r.graph else {
            table.push_str(&format!("{},{},,,,\n", r.index, r.seed));
            continue;
        };
        measured = true;
        let echo = echo_subgraph(g, &r.trace.snapshot, opts.delta_th);
        let color = echo.assortativity(ColorLabeling::Color).ok().map(|a| a.coefficient);
        let role = echo.assortativity(ColorLabeling::Role).ok().map(|a| a.coefficient);
        chosen.push(match opts.labeling {
            ColorLabeling::Color => color,
            ColorLabeling::Role => role,
        });
        table.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.index,
            r.seed,
            echo.graph.node_count(),
            echo.graph.edge_count(),
            fmt_opt(color),
            fmt_opt(role)
        ));
    }
    st.write_str(dir.join("assortativity.csv"), &table)?;

    let summary = Summary {
        n_runs: runs.len(),
        reliability,
        peak_active: series.active.peak(),
        final_ever_activated: series.ever_activated.points.last().map_or(0.0, |p| p.mean),
        bimodal: histogram.is_bimodal(),
        histogram_modes: rumor_core::analysis::local_maxima(&histogram.smoothed()),
        labeling: opts.labeling,
        delta_th: opts.delta_th,
        assortativity: measured.then(|| AssortativityPoint::from_runs(reliability, &chosen)),
    };
    write_json(st, dir.join("summary.json"), &summary)?;
    Ok(summary)
}

pub fn write_json(st: &Staging, rel: impl AsRef<Path>, value: &impl Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    st.write_str(rel, &text)
}

pub fn describe(summary: &Summary) -> String {
    let peak = summary
        .peak_active
        .map(|p| format!("peak active {:.4} at cycle {}", p.mean, p.cycle))
        .unwrap_or_default();
    let r = summary
        .assortativity
        .filter(|a| a.n_defined > 0)
        .map(|a| format!(", r = {:.4} ± {:.4} ({} defined)", a.mean, a.stderr, a.n_defined))
        .unwrap_or_default();
    format!(
        "{} runs: {peak}, ever activated {:.4}, bimodal {}{r}",
        summary.n_runs, summary.final_ever_activated, summary.bimodal
    )
}
