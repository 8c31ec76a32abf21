//! Bounded-radius single-source shortest paths.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Shortest-path distances from `source` to every node within radius `k`,
/// including the source itself at distance 0. Entries are sorted by distance
/// descending, ties by descending node id, so downstream scans can rely on a
/// fixed byte-stable order.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedDistanceList {
    pub source: NodeId,
    pub entries: Vec<(NodeId, f64)>,
}

impl BoundedDistanceList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distance to `v`, or None if `v` is outside the radius.
    pub fn distance_to(&self, v: NodeId) -> Option<f64> {
        self.entries.iter().find(|&&(u, _)| u == v).map(|&(_, d)| d)
    }
}

/// Dijkstra truncated at radius `k`: nodes whose tentative distance exceeds
/// `k` are never enqueued, so bounding cannot perturb any distance <= k.
/// The queue orders by (distance, node id) so expansion order is fixed.
pub fn bounded_sssp(graph: &Graph, source: NodeId, k: f64) -> Result<BoundedDistanceList> {
    if source as usize >= graph.node_count() {
        return Err(Error::InvalidParameter(format!("source {source} out of range")));
    }
    if !(k > 0.0) {
        return Err(Error::InvalidParameter(format!("radius {k} must be positive")));
    }
    let n = graph.node_count();
    let mut dist = vec![f64::INFINITY; n];
    // Reverse<(distance-bits, node)>: f64 distances are nonnegative here, so
    // the IEEE bit pattern orders the same as the value.
    let mut heap: BinaryHeap<Reverse<(u64, NodeId)>> = BinaryHeap::new();
    dist[source as usize] = 0.0;
    heap.push(Reverse((0, source)));
    while let Some(Reverse((dbits, u))) = heap.pop() {
        let d = f64::from_bits(dbits);
        if d > dist[u as usize] {
            continue;
        }
        for &(v, w) in graph.neighbors(u) {
            let cand = d + w;
            if cand <= k && cand < dist[v as usize] {
                dist[v as usize] = cand;
                heap.push(Reverse((cand.to_bits(), v)));
            }
        }
    }
    let mut entries: Vec<(NodeId, f64)> = dist
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d.is_finite())
        .map(|(v, &d)| (v as NodeId, d))
        .collect();
    entries.sort_unstable_by(|a, b| {
        b.1.partial_cmp(&a.1).unwrap().then_with(|| b.0.cmp(&a.0))
    });
    Ok(BoundedDistanceList { source, entries })
}
