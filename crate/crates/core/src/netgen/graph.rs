use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected, unweighted simple graph over node indices `0..n`.
///
/// Adjacency lists are sorted and symmetric; there are no self-loops and no
/// parallel edges. A `Graph` is immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) out of range for {n} nodes"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop on node {a}")));
            }
            adjacency[a].push(b as u32);
            adjacency[b].push(a as u32);
            edge_count += 1;
        }
        for (i, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!("duplicate edge at node {i}")));
            }
        }
        Ok(Graph {
            adjacency,
            edge_count,
        })
    }

    /// Assembles a graph from adjacency lists that the caller guarantees are
    /// symmetric and free of loops and duplicates. Lists are sorted here.
    pub(crate) fn from_adjacency_unchecked(mut adjacency: Vec<Vec<u32>>) -> Self {
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            degree_sum += list.len();
        }
        Graph {
            adjacency,
            edge_count: degree_sum / 2,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, node: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adjacency[node].iter().map(|&j| j as usize)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&(b as u32)).is_ok()
    }

    /// Each undirected edge once, as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, list)| {
            list.iter()
                .map(|&j| j as usize)
                .filter(move |&j| i < j)
                .map(move |j| (i, j))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    visited += 1;
                    stack.push(v);
                }
            }
        }
        visited == n
    }

    /// Subgraph induced by `nodes` (in the given order, which becomes the new
    /// indexing), keeping only edges for which `keep(old_i, old_j)` holds.
    pub fn filtered_induced_subgraph(
        &self,
        nodes: &[usize],
        mut keep: impl FnMut(usize, usize) -> bool,
    ) -> Graph {
        let mut remap = vec![u32::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            remap[old] = new as u32;
        }
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (new_i, &old_i) in nodes.iter().enumerate() {
            for old_j in self.neighbors(old_i) {
                let new_j = remap[old_j];
                if new_j != u32::MAX && keep(old_i, old_j) {
                    adjacency[new_i].push(new_j);
                }
            }
        }
        Graph::from_adjacency_unchecked(adjacency)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn edges_are_ordered_and_unique() {
        let g = Graph::from_edges(4, [(2, 1), (0, 3), (1, 0)]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        assert!(g.is_connected());
    }

    #[test]
    fn filtered_subgraph_reindexes() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let sub = g.filtered_induced_subgraph(&[3, 2, 1], |_, _| true);
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let none = g.filtered_induced_subgraph(&[0, 1, 2, 3], |_, _| false);
        assert_eq!(none.edge_count(), 0);
    }
}
