use serde::Serialize;

use rumor_core::netgen::{
    degree_histogram, fit_power_law, generate_ba, write_degree_histogram_csv, write_edge_list, PowerLawFit,
};

use crate::failure::Failure;
use crate::output::{resolve_out, Staging};
use crate::GenerateArgs;

#[derive(Debug, Serialize)]
struct FitReport {
    nodes: usize,
    m: usize,
    seed: u64,
    edges: usize,
    k_min: usize,
    fit: Option<PowerLawFit>,
    /// Why no fit was produced.
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn generate(a: GenerateArgs) -> Result<(), Failure> {
    let target = resolve_out(a.out.out.as_deref(), &format!("graph-n{}-m{}-s{}", a.nodes, a.m, a.seed));
    let g = generate_ba(a.nodes, a.m, a.seed)?;
    let k_min = a.k_min.unwrap_or(a.m + 1);
    let hist = degree_histogram(&g);
    let fit = fit_power_law(&hist, k_min);

    let st = Staging::new(&target, a.out.force)?;
    st.write("graph.edgelist", |w| write_edge_list(&g, w))?;
    st.write("degree_histogram.csv", |w| write_degree_histogram_csv(&hist, w))?;
    let report = FitReport {
        nodes: a.nodes,
        m: a.m,
        seed: a.seed,
        edges: g.edge_count(),
        k_min,
        fit: fit.as_ref().ok().copied(),
        error: fit.as_ref().err().map(|e| e.to_string()),
    };
    super::write_json(&st, "fit.json", &report)?;
    let dir = st.commit()?;

    match fit {
        Ok(f) => println!(
            "{}: {} nodes, {} edges, gamma = {:.3} ± {:.3} over {} classes",
            dir.display(),
            g.node_count(),
            g.edge_count(),
            f.gamma,
            f.gamma_stat_err,
            f.n_points
        ),
        Err(e) => println!("{}: {} nodes, {} edges, no fit: {e}", dir.display(), g.node_count(), g.edge_count()),
    }
    Ok(())
}
