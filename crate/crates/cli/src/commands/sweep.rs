use std::path::Path;

use serde::Serialize;

use rumor_core::analysis::SweepOptions;
use rumor_core::seed::sub_seed;

use super::batch::run_dir;
use super::{describe, execute, successes, validate_options, write_json, write_reports, write_run_artifacts, RunEntry, VERSION};
use crate::failure::Failure;
use crate::output::{resolve_out, Staging};
use crate::scenario;
use crate::SweepArgs;

#[derive(Debug, Serialize)]
struct PointEntry {
    index: usize,
    value: f64,
    config_hash: String,
    master_seed: u64,
    n_succeeded: usize,
    n_failed: usize,
    runs: Vec<RunEntry>,
}

#[derive(Debug, Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    scenario: String,
    base_config_hash: String,
    seed: u64,
    parameter: String,
    values: Vec<f64>,
    runs_per_point: usize,
    options: SweepOptions,
    points: Vec<PointEntry>,
    /// The resolved base scenario; point `i` sets the parameter to
    /// `values[i]` and uses master seed `sub_seed(seed, i)`.
    config: String,
}

pub fn sweep(a: SweepArgs) -> Result<(), Failure> {
    let base = scenario::load(&a.scenario.scenario, &a.scenario.sets)?;
    let (key, values) = scenario::parse_grid(&a.param)?;
    let n_runs = a.runs.unwrap_or(base.n_runs);
    let opts = a.analysis.options();
    validate_options(&opts)?;
    let seed = a.scenario.seed;
    let mut configs = Vec::with_capacity(values.len());
    for &x in &values {
        let mut c = base.with_override(&key, &x.to_string())?;
        c.set("n_runs", &n_runs.to_string())?;
        configs.push(c);
    }
    let target = resolve_out(a.out.out.as_deref(), &format!("sweep-{}-{key}-s{seed}", base.name));
    let st = Staging::new(&target, a.out.force)?;
    st.write_str("scenario.toml", &base.to_toml()?)?;

    let mut table = String::from("value,reliability,mean,stderr,n_defined,n_undefined,n_runs\n");
    let mut modes = String::from("value,bimodal,n_modes\n");
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for (i, (config, &x)) in configs.iter().zip(&values).enumerate() {
        let master = sub_seed(seed, i as u64);
        let members = execute(config, master, n_runs);
        let ok = successes(&members);
        let dir = Path::new("points").join(format!("point_{i:02}"));
        if a.keep_runs {
            for m in &members {
                if let Ok((g, out)) = &m.outcome {
                    write_run_artifacts(&st, &dir.join(run_dir(m.index)), g, out, opts.delta_th)?;
                }
            }
        }
        if !ok.is_empty() {
            let s = write_reports(&st, &dir, &ok, &opts)?;
            let p = s.assortativity.expect("sweep runs keep their graphs");
            table.push_str(&format!(
                "{x},{},{},{},{},{},{}\n",
                s.reliability,
                p.mean,
                p.stderr,
                p.n_defined,
                p.n_undefined,
                ok.len()
            ));
            modes.push_str(&format!("{x},{},{}\n", s.bimodal, s.histogram_modes.len()));
            lines.push(format!("{key} = {x}: {}", describe(&s)));
        } else {
            lines.push(format!("{key} = {x}: all runs failed"));
        }
        points.push(PointEntry {
            index: i,
            value: x,
            config_hash: config.config_hash(),
            master_seed: master,
            n_succeeded: ok.len(),
            n_failed: members.len() - ok.len(),
            runs: members.iter().map(RunEntry::of).collect(),
        });
    }
    st.write_str("assortativity.csv", &table)?;
    st.write_str("bimodality.csv", &modes)?;
    let any_ok = points.iter().any(|p| p.n_succeeded > 0);
    let failed: usize = points.iter().map(|p| p.n_failed).sum();
    write_json(
        &st,
        "manifest.json",
        &Manifest {
            tool: "rumorsim",
            version: VERSION,
            command: "sweep",
            scenario: base.name.clone(),
            base_config_hash: base.config_hash(),
            seed,
            parameter: key,
            values,
            runs_per_point: n_runs,
            options: opts,
            points,
            config: base.to_toml()?,
        },
    )?;
    let dir = st.commit()?;

    println!("{}", dir.display());
    for l in lines {
        println!("  {l}");
    }
    if !any_ok {
        return Err(Failure::runtime(format!(
            "every run failed; see {}",
            dir.join("manifest.json").display()
        )));
    }
    if failed > 0 {
        println!("{failed} runs failed; see manifest.json");
    }
    Ok(())
}
