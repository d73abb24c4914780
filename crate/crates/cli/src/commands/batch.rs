use std::path::{Path, PathBuf};

use serde::Serialize;

use rumor_core::analysis::SweepOptions;

use super::{describe, execute, successes, validate_options, write_json, write_reports, write_run_artifacts, RunEntry, VERSION};
use crate::failure::Failure;
use crate::output::{resolve_out, Staging};
use crate::scenario;
use crate::BatchArgs;

#[derive(Debug, Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    scenario: String,
    config_hash: String,
    master_seed: u64,
    options: SweepOptions,
    n_runs: usize,
    n_succeeded: usize,
    n_failed: usize,
    runs: Vec<RunEntry>,
    /// The resolved scenario; with `master_seed` it replays every run.
    config: String,
}

pub fn run_dir(index: usize) -> PathBuf {
    Path::new("runs").join(format!("run_{index:03}"))
}

pub fn batch(a: BatchArgs) -> Result<(), Failure> {
    let mut config = scenario::load(&a.scenario.scenario, &a.scenario.sets)?;
    if let Some(n) = a.runs {
        config.set("n_runs", &n.to_string())?;
    }
    let opts = a.analysis.options();
    validate_options(&opts)?;
    let seed = a.scenario.seed;
    let target = resolve_out(a.out.out.as_deref(), &format!("batch-{}-s{seed}", config.name));

    let members = execute(&config, seed, config.n_runs);
    let ok = successes(&members);

    let st = Staging::new(&target, a.out.force)?;
    st.write_str("scenario.toml", &config.to_toml()?)?;
    for m in &members {
        if let Ok((g, out)) = &m.outcome {
            write_run_artifacts(&st, &run_dir(m.index), g, out, opts.delta_th)?;
        }
    }
    let summary = if ok.is_empty() {
        None
    } else {
        Some(write_reports(&st, Path::new(""), &ok, &opts)?)
    };
    let manifest = Manifest {
        tool: "rumorsim",
        version: VERSION,
        command: "batch",
        scenario: config.name.clone(),
        config_hash: config.config_hash(),
        master_seed: seed,
        options: opts,
        n_runs: members.len(),
        n_succeeded: ok.len(),
        n_failed: members.len() - ok.len(),
        runs: members.iter().map(RunEntry::of).collect(),
        config: config.to_toml()?,
    };
    write_json(&st, "manifest.json", &manifest)?;
    let dir = st.commit()?;

    for m in &members {
        if let Err(e) = &m.outcome {
            eprintln!("rumorsim: run {} (seed {}) failed: {e}", m.index, m.seed);
        }
    }
    match summary {
        Some(s) => {
            println!("{}: {}", dir.display(), describe(&s));
            if manifest.n_failed > 0 {
                println!("{} of {} runs failed; aggregates cover the rest", manifest.n_failed, manifest.n_runs);
            }
            Ok(())
        }
        None => Err(Failure::runtime(format!(
            "all {} runs failed; see {}",
            manifest.n_runs,
            dir.join("manifest.json").display()
        ))),
    }
}
