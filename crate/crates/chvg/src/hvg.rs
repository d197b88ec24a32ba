//! Horizontal visibility graphs over position-indexed value series.
//!
//! Positions `i < j` are linked exactly when every value strictly between
//! them is smaller than both endpoints:
//!
//! ```text
//! (i, j) is an edge  <=>  values[p] < min(values[i], values[j])  for all i < p < j
//! ```
//!
//! Consecutive positions always see each other (the condition is vacuous),
//! so the graph always contains the path over positions. Equal values block
//! visibility past them: in a constant series only neighbors are linked.
//!
//! Two builders construct the same graph: [`build_hvg`] runs in linear time
//! with a monotone stack, and [`naive_hvg`] transcribes the defining
//! condition literally in quadratic time. The naive builder exists so the
//! fast one can be checked against an implementation that shares none of
//! its logic.

use crate::error::{Error, Result};
use crate::weighting::ValueSeries;

/// Hard cap on the series length [`naive_hvg`] accepts; beyond this the
/// quadratic scan stops being useful even as a test oracle.
pub const NAIVE_NODE_CAP: usize = 10_000;

/// Undirected graph over token positions `0..n`. Neighbor lists are sorted
/// and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceGraph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl OccurrenceGraph {
    fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in pairs {
            adj[i as usize].push(j);
            adj[j as usize].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        OccurrenceGraph {
            adj,
            edge_count: pairs.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Degree of one position.
    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    /// Neighbors of one position, ascending.
    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.adj[node]
    }

    pub fn contains_edge(&self, i: u32, j: u32) -> bool {
        self.adj[i as usize].binary_search(&j).is_ok()
    }

    /// All edges as `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, neighbors)| {
            let i = i as u32;
            neighbors
                .iter()
                .copied()
                .filter(move |&j| i < j)
                .map(move |j| (i, j))
        })
    }

    /// Average degree `2E / N`; zero for the empty graph.
    pub fn mean_degree(&self) -> f64 {
        if self.adj.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.adj.len() as f64
        }
    }
}

/// Path graph over `n` positions: the stage-one graph of the simple
/// adjacency baseline, where each token sees only its immediate neighbors.
pub(crate) fn path_graph(n: usize) -> OccurrenceGraph {
    let pairs: Vec<(u32, u32)> = (1..n as u32).map(|j| (j - 1, j)).collect();
    OccurrenceGraph::from_pairs(n, &pairs)
}

/// Build the horizontal visibility graph of a value series in linear time.
pub fn build_hvg(series: &ValueSeries) -> OccurrenceGraph {
    build_hvg_values(series.values())
}

/// [`build_hvg`] over a raw slice. Values must not be NaN; every
/// [`ValueSeries`] satisfies this by construction.
pub fn build_hvg_values(values: &[f64]) -> OccurrenceGraph {
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(values.len() * 2);
    // Stack of positions with strictly decreasing values. A new position j
    // links to every popped smaller position and to the first position at
    // or above its own value, which also blocks any earlier one from
    // seeing j.
    let mut stack: Vec<u32> = Vec::new();
    for (j, &vj) in values.iter().enumerate() {
        let j = j as u32;
        while let Some(&i) = stack.last() {
            let vi = values[i as usize];
            if vi < vj {
                pairs.push((i, j));
                stack.pop();
            } else {
                pairs.push((i, j));
                if vi == vj {
                    // An equal value is visible but blocks everything
                    // behind it just like a greater one.
                    stack.pop();
                }
                break;
            }
        }
        stack.push(j);
    }
    OccurrenceGraph::from_pairs(values.len(), &pairs)
}

/// Build the same graph by checking the visibility condition directly for
/// every pair of positions. Quadratic; refuses series longer than
/// [`NAIVE_NODE_CAP`].
pub fn naive_hvg(series: &ValueSeries) -> Result<OccurrenceGraph> {
    naive_hvg_values(series.values())
}

/// [`naive_hvg`] over a raw slice.
pub fn naive_hvg_values(values: &[f64]) -> Result<OccurrenceGraph> {
    if values.len() > NAIVE_NODE_CAP {
        return Err(Error::SeriesTooLong {
            len: values.len(),
            cap: NAIVE_NODE_CAP,
        });
    }
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            let bar = values[i].min(values[j]);
            if values[i + 1..j].iter().all(|&between| between < bar) {
                pairs.push((i as u32, j as u32));
            }
        }
    }
    Ok(OccurrenceGraph::from_pairs(values.len(), &pairs))
}
