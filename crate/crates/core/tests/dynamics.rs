//! Scenario-scale behavior of the agent model and the measurements built on it.

use rumor_core::analysis::{
    attribute_assortativity, density_by_degree, echo_subgraph, evaluate_point, threshold_histogram, ColorLabeling,
    SweepOptions,
};
use rumor_core::mas::{run, ModelParams, NewsSchedule};
use rumor_core::netgen::{gamma_ensemble, generate_ba};
use rumor_core::scenario::{batch_run, ScenarioConfig};
use rumor_core::seed::sub_seed;

#[test]
fn hubs_activate_at_least_as_often_as_leaves() {
    let g = generate_ba(1_000, 2, 8).unwrap();
    for r in [0.5, 0.7, 0.9] {
        let schedule = NewsSchedule::constant(r, 0.10).unwrap();
        let traces: Vec<_> = (0..20)
            .map(|i| run(&g, &schedule, &ModelParams::default(), 500, sub_seed(4, i)).unwrap())
            .collect();
        let d = density_by_degree(traces.iter().map(|t| t.snapshot.as_slice()));
        let high = d.mean_over(10..).unwrap();
        let low = d.mean_over(..=3).unwrap();
        assert!(high >= low, "r={r}: k>=10 {high} vs k<=3 {low}");
    }
}

#[test]
fn more_reliable_news_reaches_more_agents() {
    let g = generate_ba(1_000, 2, 9).unwrap();
    let reach = |r: f64| {
        let schedule = NewsSchedule::constant(r, 0.10).unwrap();
        (0..20)
            .map(|i| {
                let t = run(&g, &schedule, &ModelParams::default(), 500, sub_seed(6, i)).unwrap();
                t.last().ever_activated as f64 / 1_000.0
            })
            .sum::<f64>()
            / 20.0
    };
    let (high, low) = (reach(0.9), reach(0.5));
    assert!(high >= low, "r=0.9 reached {high}, r=0.5 reached {low}");
}

#[test]
fn untouched_population_gives_flat_histogram() {
    let n = 10_000;
    let bins = 20;
    let g = generate_ba(n, 2, 1).unwrap();
    let trace = run(&g, &NewsSchedule::constant(0.0, 0.5).unwrap(), &ModelParams::default(), 10, 12).unwrap();
    assert!(trace.records.iter().all(|r| r.counts.undeployed == n));
    let h = threshold_histogram([trace.snapshot.as_slice()], bins, 0.0).unwrap();
    let bound = 5.0 * (1.0 / (n * bins) as f64).sqrt();
    let worst = h.frequencies.iter().map(|f| (f - 1.0 / bins as f64).abs()).fold(0.0, f64::max);
    assert!(worst < bound, "max deviation {worst} >= {bound}");
}

#[test]
fn weaker_visibility_slows_the_rumor_phase() {
    let early = |v1: f64| {
        let mut config = ScenarioConfig::higgs(v1).unwrap();
        config.network.nodes = 2_000;
        let agg = batch_run(&config, 3).unwrap();
        agg.series.active.window_mean(0, 20)
    };
    let (fast, slow) = (early(0.10), early(0.01));
    assert!(slow < fast, "v1=0.01 gave {slow}, v1=0.10 gave {fast}");
}

#[test]
fn vacuous_edge_filter_matches_unfiltered_assortativity() {
    let config = ScenarioConfig::echo(0.55, 500).unwrap();
    let g = config.graph_for_run(21).unwrap();
    let trace = run(&g, &config.schedule, &config.params, config.max_cycles, 21).unwrap();
    let echo = echo_subgraph(&g, &trace.snapshot, 1.0);
    let labels: Vec<_> = trace.snapshot.iter().map(|s| ColorLabeling::Color.label(s)).collect();
    let direct = attribute_assortativity(&g, &labels).unwrap();
    let filtered = echo.assortativity(ColorLabeling::Color).unwrap();
    assert!((direct.coefficient - filtered.coefficient).abs() < 1e-12);
    assert_eq!(direct.n_edges_used, filtered.n_edges_used);
    assert_eq!(echo.graph.edge_count(), filtered.n_edges_used);
}

#[test]
fn contested_news_is_more_assortative_after_edge_filtering() {
    let point = |r: f64| {
        let mut config = ScenarioConfig::echo(r, 1_000).unwrap();
        config.n_runs = 10;
        let opts = SweepOptions {
            delta_th: 0.4,
            ..Default::default()
        };
        evaluate_point(&config, r, 8, &opts).unwrap().assortativity
    };
    let (low, high) = (point(0.50), point(0.90));
    assert!(low.mean > high.mean, "r=0.5 {low:?} vs r=0.9 {high:?}");
}

#[test]
fn smaller_graphs_have_noisier_exponents() {
    let small = gamma_ensemble(10, 1_000, 2, 3, 11).unwrap();
    let large = gamma_ensemble(10, 10_000, 2, 3, 11).unwrap();
    assert!(small.gamma_mean > 2.0 && small.gamma_mean < 3.0, "{}", small.gamma_mean);
    assert!(small.gamma_sys_err > large.gamma_sys_err);
}
