use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rumor_core::analysis::{attribute_assortativity, echo_subgraph, ColorLabeling};
use rumor_core::mas::run;
use rumor_core::netgen::{degree_histogram, fit_power_law, generate_ba};
use rumor_core::sir::run_sir;
use rumor_core::{ModelParams, NewsSchedule, ScenarioConfig, SirParams};

fn bench_generate(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_ba");
    for n in [1_000, 10_000, 50_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| generate_ba(black_box(n), 2, 1).unwrap())
        });
    }
    group.finish();

    let g = generate_ba(10_000, 2, 1).unwrap();
    c.bench_function("fit_power_law/10000", |b| {
        b.iter(|| fit_power_law(&degree_histogram(black_box(&g)), 3).unwrap())
    });
}

fn bench_dynamics(c: &mut Criterion) {
    let mut group = c.benchmark_group("run");
    group.sample_size(20);
    for name in ["true_news", "hoax_debunk:n=10000", "higgs"] {
        let config = ScenarioConfig::builtin(name).unwrap();
        let g = config.graph_for_run(1).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| run(&g, &config.schedule, &config.params, config.max_cycles, black_box(7)).unwrap())
        });
    }
    let g = generate_ba(10_000, 2, 1).unwrap();
    let params = SirParams {
        alpha: 0.05,
        lambda: 0.27,
        initial_spreaders: 1,
    };
    group.bench_function("sir", |b| b.iter(|| run_sir(&g, &params, 500, black_box(7)).unwrap()));
    group.finish();
}

fn bench_assortativity(c: &mut Criterion) {
    let g = generate_ba(10_000, 2, 1).unwrap();
    let labels: Vec<Option<u8>> = (0..g.node_count()).map(|i| Some((i % 4) as u8)).collect();
    c.bench_function("assortativity/labels", |b| {
        b.iter(|| attribute_assortativity(black_box(&g), &labels).unwrap())
    });

    let schedule = NewsSchedule::constant(0.6, 0.15).unwrap();
    let trace = run(&g, &schedule, &ModelParams::default(), 500, 3).unwrap();
    c.bench_function("assortativity/echo_subgraph", |b| {
        b.iter(|| {
            echo_subgraph(black_box(&g), &trace.snapshot, 0.4)
                .assortativity(ColorLabeling::Color)
                .map(|r| r.coefficient)
                .ok()
        })
    });
}

criterion_group!(benches, bench_generate, bench_dynamics, bench_assortativity);
criterion_main!(benches);
