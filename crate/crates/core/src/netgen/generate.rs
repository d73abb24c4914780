use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

/// Barabási-Albert growth: start from a complete graph on `m + 1` nodes, then
/// attach every new node to `m` distinct existing nodes drawn with probability
/// proportional to their current degree.
///
/// Degree-proportional sampling uses the endpoint list (every node appears
/// once per incident edge); a draw that repeats an already chosen target is
/// rejected and redrawn, i.e. sampling without replacement.
pub fn generate_ba(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if n <= m {
        return Err(Error::InvalidParameter(format!(
            "need more nodes than edges per new node (n={n}, m={m})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * (m * (m + 1) / 2 + m * (n - m - 1)));

    for i in 0..=m {
        for j in (i + 1)..=m {
            adjacency[i].push(j as u32);
            adjacency[j].push(i as u32);
            endpoints.push(i as u32);
            endpoints.push(j as u32);
        }
    }

    let mut targets: Vec<u32> = Vec::with_capacity(m);
    for new in (m + 1)..n {
        targets.clear();
        while targets.len() < m {
            let pick = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        for &t in &targets {
            adjacency[new].push(t);
            adjacency[t as usize].push(new as u32);
            endpoints.push(new as u32);
            endpoints.push(t);
        }
    }

    Ok(Graph::from_adjacency_unchecked(adjacency))
}
