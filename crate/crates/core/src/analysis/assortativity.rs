use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mas::{AgentColor, AgentSnapshot};
use crate::netgen::{write_gexf, GexfAttribute, GexfValues, Graph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssortativityResult<L> {
    pub coefficient: f64,
    pub n_edges_used: usize,
    /// Label classes present on the counted edges, in sorted order.
    pub classes: Vec<L>,
}

/// Newman's attribute assortativity of a discrete node labelling.
///
/// Only edges whose endpoints are both labeled are counted. Each such edge
/// contributes once in each direction to the mixing matrix `e`, normalized by
/// twice the edge count, and `r = (tr e - sum a_i b_i) / (1 - sum a_i b_i)`
/// with `a`, `b` the row and column sums.
pub fn attribute_assortativity<L: Ord + Clone>(
    g: &Graph,
    labels: &[Option<L>],
) -> Result<AssortativityResult<L>> {
    assert_eq!(labels.len(), g.node_count(), "one label slot per node");
    let mut index: BTreeMap<L, usize> = BTreeMap::new();
    let mut pairs = Vec::new();
    for (i, j) in g.edges() {
        if let (Some(a), Some(b)) = (&labels[i], &labels[j]) {
            let next = index.len();
            let ia = *index.entry(a.clone()).or_insert(next);
            let next = index.len();
            let ib = *index.entry(b.clone()).or_insert(next);
            pairs.push((ia, ib));
        }
    }
    if pairs.is_empty() {
        return Err(Error::EmptySubgraph);
    }
    let k = index.len();
    let mut e = vec![vec![0.0f64; k]; k];
    let weight = 1.0 / (2 * pairs.len()) as f64;
    for &(a, b) in &pairs {
        e[a][b] += weight;
        e[b][a] += weight;
    }
    let trace: f64 = (0..k).map(|i| e[i][i]).sum();
    let ab: f64 = (0..k)
        .map(|i| {
            let row: f64 = e[i].iter().sum();
            let col: f64 = e.iter().map(|r| r[i]).sum();
            row * col
        })
        .sum();
    let denom = 1.0 - ab;
    if denom.abs() < 1e-12 {
        return Err(Error::DegenerateLabels);
    }
    let mut classes: Vec<(L, usize)> = index.into_iter().collect();
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(AssortativityResult {
        coefficient: ((trace - ab) / denom).clamp(-1.0, 1.0),
        n_edges_used: pairs.len(),
        classes: classes.into_iter().map(|(l, _)| l).collect(),
    })
}

/// Which color an agent that took part in the diffusion is labeled with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorLabeling {
    /// The color the agent last held while active: spontaneous, influenced,
    /// persuaded or debunker.
    #[default]
    Color,
    /// Two classes only: spread the news, or spread the correction.
    Role,
}

impl ColorLabeling {
    /// Label for an active color. Under `Role` all spreaders share `Spontaneous`.
    pub fn map(self, color: AgentColor) -> AgentColor {
        match self {
            ColorLabeling::Color => color,
            ColorLabeling::Role if color.is_spreader() => AgentColor::Spontaneous,
            ColorLabeling::Role => AgentColor::Debunker,
        }
    }

    pub fn label(self, a: &AgentSnapshot) -> Option<AgentColor> {
        a.last_active_color.map(|c| self.map(c))
    }
}

/// Diffusion subgraph: agents that spread or debunked (inactive ones
/// included), linked only where their final thresholds differ by at most
/// `delta_th`.
#[derive(Debug, Clone, PartialEq)]
pub struct EchoSubgraph {
    pub graph: Graph,
    /// Node id in the parent graph for each subgraph node.
    pub node_ids: Vec<usize>,
    /// Color each node held while active.
    pub colors: Vec<AgentColor>,
    pub thresholds: Vec<f64>,
}

pub fn echo_subgraph(g: &Graph, snapshot: &[AgentSnapshot], delta_th: f64) -> EchoSubgraph {
    assert_eq!(snapshot.len(), g.node_count(), "snapshot must match the graph");
    let node_ids: Vec<usize> = snapshot.iter().filter(|a| a.took_part()).map(|a| a.agent_id).collect();
    let graph = g.filtered_induced_subgraph(&node_ids, |i, j| {
        (snapshot[i].threshold_final - snapshot[j].threshold_final).abs()
            <= delta_th + crate::mas::COMPARE_TOL
    });
    EchoSubgraph {
        colors: node_ids
            .iter()
            .map(|&i| snapshot[i].last_active_color.expect("participants have a color"))
            .collect(),
        thresholds: node_ids.iter().map(|&i| snapshot[i].threshold_final).collect(),
        graph,
        node_ids,
    }
}

impl EchoSubgraph {
    pub fn assortativity(&self, labeling: ColorLabeling) -> Result<AssortativityResult<AgentColor>> {
        let labels: Vec<Option<AgentColor>> = self.colors.iter().map(|&c| Some(labeling.map(c))).collect();
        attribute_assortativity(&self.graph, &labels)
    }

    pub fn write_gexf<W: Write>(&self, w: W) -> std::io::Result<()> {
        let attrs = [
            GexfAttribute {
                title: "color".into(),
                values: GexfValues::Text(self.colors.iter().map(|c| c.display_color().to_string()).collect()),
            },
            GexfAttribute {
                title: "state".into(),
                values: GexfValues::Text(self.colors.iter().map(|c| c.name().to_string()).collect()),
            },
            GexfAttribute {
                title: "threshold".into(),
                values: GexfValues::Double(self.thresholds.clone()),
            },
        ];
        write_gexf(&self.graph, w, Some(&self.node_ids), &attrs)
    }
}
