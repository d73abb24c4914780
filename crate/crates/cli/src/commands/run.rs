use std::path::Path;

use rumor_core::scenario::run_seed;

use super::{execute, write_run_artifacts};
use crate::failure::Failure;
use crate::output::{resolve_out, Staging};
use crate::scenario;
use crate::RunArgs;

/// Runs member 0 of the batch seeded with `--seed`, so its files match
/// `runs/run_000/` of a batch with the same seed.
pub fn run(a: RunArgs) -> Result<(), Failure> {
    let config = scenario::load(&a.scenario.scenario, &a.scenario.sets)?;
    let target = resolve_out(a.out.out.as_deref(), &format!("run-{}-s{}", config.name, a.scenario.seed));
    if !(a.delta_th >= 0.0 && a.delta_th.is_finite()) {
        return Err(Failure::config(format!("--delta-th must be a finite value >= 0, got {}", a.delta_th)));
    }
    let member = execute(&config, a.scenario.seed, 1).pop().expect("one member");
    let (graph, out) = member.outcome.map_err(Failure::runtime)?;

    let st = Staging::new(&target, a.out.force)?;
    st.write_str("scenario.toml", &config.to_toml()?)?;
    write_run_artifacts(&st, Path::new(""), &graph, &out, a.delta_th)?;
    let dir = st.commit()?;

    let last = out.trace.last();
    println!(
        "{}: {} cycles (run seed {}), ever activated {} of {}, {} debunked",
        dir.display(),
        out.trace.records.len(),
        run_seed(a.scenario.seed, 0),
        last.ever_activated,
        out.trace.n_nodes,
        last.ever_debunked
    );
    Ok(())
}
