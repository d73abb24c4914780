use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::Serialize;

use rumor_core::mas::SimulationTrace;
use rumor_core::netgen::{read_edge_list, Graph};

use super::{describe, validate_options, write_json, write_reports, RunView, VERSION};
use crate::failure::{Context, Failure};
use crate::output::{resolve_out, Staging};
use crate::AnalyzeArgs;

#[derive(Debug, Serialize)]
struct Source {
    trace: PathBuf,
    graph: Option<PathBuf>,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    sources: Vec<Source>,
}

fn find_traces(dir: &Path, found: &mut Vec<PathBuf>) -> Result<(), Failure> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .config(format!("cannot read {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .runtime(format!("cannot read {}", dir.display()))?;
    entries.sort();
    for p in entries {
        if p.is_dir() {
            find_traces(&p, found)?;
        } else if p.file_name().is_some_and(|n| n == "trace.json") {
            found.push(p);
        }
    }
    Ok(())
}

/// Reads every `trace.json` under `--trace-dir`, with the `graph.edgelist`
/// beside it when present, and writes the batch reports for them.
pub fn analyze(a: AnalyzeArgs) -> Result<(), Failure> {
    let opts = a.analysis.options();
    validate_options(&opts)?;
    if !a.trace_dir.is_dir() {
        return Err(Failure::config(format!("trace directory {} not found", a.trace_dir.display())));
    }
    let mut paths = Vec::new();
    find_traces(&a.trace_dir, &mut paths)?;
    if paths.is_empty() {
        return Err(Failure::config(format!("no trace.json under {}", a.trace_dir.display())));
    }

    let mut loaded: Vec<(SimulationTrace, Option<Graph>, Source)> = Vec::new();
    for p in paths {
        let text = fs::read_to_string(&p).config(format!("cannot read {}", p.display()))?;
        let trace = SimulationTrace::from_json(&text).config(format!("{} is not a trace", p.display()))?;
        let gpath = p.with_file_name("graph.edgelist");
        let graph = if gpath.is_file() {
            let f = fs::File::open(&gpath).config(format!("cannot read {}", gpath.display()))?;
            let g = read_edge_list(BufReader::new(f))
                .map_err(|e| Failure::config(format!("{}: {e}", gpath.display())))?;
            if g.node_count() != trace.n_nodes {
                return Err(Failure::config(format!(
                    "{} has {} nodes but its trace has {}",
                    gpath.display(),
                    g.node_count(),
                    trace.n_nodes
                )));
            }
            Some(g)
        } else {
            None
        };
        let source = Source {
            seed: trace.seed,
            graph: graph.as_ref().map(|_| gpath),
            trace: p,
        };
        loaded.push((trace, graph, source));
    }

    let views: Vec<RunView> = loaded
        .iter()
        .enumerate()
        .map(|(i, (t, g, s))| RunView {
            index: i,
            seed: s.seed,
            trace: t,
            baseline: None,
            graph: g.as_ref(),
        })
        .collect();
    let name = a
        .trace_dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "traces".into());
    let target = resolve_out(a.out.out.as_deref(), &format!("analysis-{name}"));
    let st = Staging::new(&target, a.out.force)?;
    let summary = write_reports(&st, Path::new(""), &views, &opts)?;
    write_json(
        &st,
        "manifest.json",
        &Manifest {
            tool: "rumorsim",
            version: VERSION,
            command: "analyze",
            sources: loaded.into_iter().map(|l| l.2).collect(),
        },
    )?;
    let dir = st.commit()?;
    println!("{}: {}", dir.display(), describe(&summary));
    Ok(())
}
