//! Comparison similarity measures: the k-degree interaction index, common
//! k-neighbours, and local / superposed random walks.

use rayon::prelude::*;

use crate::distance::{DistanceFunction, DistanceKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::interaction::shapley_closeness_all_pairs;
use crate::neighborhood::NeighborhoodTable;
use crate::scores::PairScores;

/// Uniform-neighbor walk distribution after `step` moves from `source`.
/// Isolated sources get an all-zero profile (a walk from them is undefined).
#[derive(Debug, Clone, PartialEq)]
pub struct WalkProfile {
    pub source: NodeId,
    pub step: usize,
    pub probabilities: Vec<f64>,
}

pub fn walk_profile(graph: &Graph, source: NodeId, step: usize) -> WalkProfile {
    let n = graph.node_count();
    let mut current = vec![0.0f64; n];
    if graph.degree(source) > 0 {
        current[source as usize] = 1.0;
        for _ in 0..step {
            let mut next = vec![0.0f64; n];
            for (u, &p) in current.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let deg = graph.degree(u as NodeId) as f64;
                let share = p / deg;
                for &(v, _) in graph.neighbors(u as NodeId) {
                    next[v as usize] += share;
                }
            }
            current = next;
        }
    }
    WalkProfile { source, step, probabilities: current }
}

/// The generalized kernel specialized to the indicator distance function:
/// the closeness game degenerates to k-degree centrality, and this goes
/// through exactly the same code path as the general measure.
pub fn shapley_k_degree_scores(table: &NeighborhoodTable) -> Result<PairScores> {
    let f = DistanceFunction::new(DistanceKind::Indicator, table.radius_k)?;
    shapley_closeness_all_pairs(table, f)
}

/// Which inequality defines the k-neighbourhood E^k(v).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeighborhoodMode {
    /// dist(v, u) <= k — the usual reading, and the default.
    #[default]
    Inclusive,
    /// dist(v, u) < k. Makes CN^1 identically zero on unweighted graphs.
    Strict,
}

/// Number of common k-neighbours per pair, counted by the same loop reversal
/// as the kernels: every node w increments all pairs inside its ball.
pub fn common_neighbors_scores(
    table: &NeighborhoodTable,
    k: f64,
    mode: NeighborhoodMode,
) -> Result<PairScores> {
    if k > table.radius_k + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "requested k {k} exceeds the table radius {}",
            table.radius_k
        )));
    }
    let mut scores = PairScores::new();
    for w in 0..table.node_count as NodeId {
        let ball: Vec<NodeId> = table
            .list(w)
            .entries
            .iter()
            .filter(|&&(v, d)| {
                v != w
                    && match mode {
                        NeighborhoodMode::Inclusive => d <= k,
                        NeighborhoodMode::Strict => d < k,
                    }
            })
            .map(|&(v, _)| v)
            .collect();
        for i in 0..ball.len() {
            for &t in &ball[i + 1..] {
                scores.add(ball[i], t, 1.0);
            }
        }
    }
    Ok(scores)
}

fn walk_endpoint_profiles(graph: &Graph, steps: usize) -> Vec<Vec<f64>> {
    (0..graph.node_count() as NodeId)
        .into_par_iter()
        .map(|u| walk_profile(graph, u, steps).probabilities)
        .collect()
}

fn degree_weight(graph: &Graph, u: NodeId) -> f64 {
    graph.degree(u) as f64 / (2.0 * graph.edge_count() as f64)
}

/// LRW^k(u,v) = deg(u)/(2|E|) P_uv(k) + deg(v)/(2|E|) P_vu(k), for every
/// non-adjacent pair where the value is nonzero. Weights are ignored: the
/// walker moves to a uniformly random neighbor.
pub fn lrw_scores(graph: &Graph, k: usize) -> Result<PairScores> {
    if graph.edge_count() == 0 {
        return Err(Error::InvalidParameter("walk scores need at least one edge".into()));
    }
    let profiles = walk_endpoint_profiles(graph, k);
    let mut scores = PairScores::new();
    for (u, v) in graph.nonadjacent_pairs() {
        let value = degree_weight(graph, u) * profiles[u as usize][v as usize]
            + degree_weight(graph, v) * profiles[v as usize][u as usize];
        if value != 0.0 {
            scores.set(u, v, value);
        }
    }
    Ok(scores)
}

/// SRW^k = sum of LRW^t for t = 0..=k. The t = 0 term is zero off-diagonal.
pub fn srw_scores(graph: &Graph, k: usize) -> Result<PairScores> {
    if graph.edge_count() == 0 {
        return Err(Error::InvalidParameter("walk scores need at least one edge".into()));
    }
    // accumulate sum over t of P(t) per source while stepping once
    let summed: Vec<Vec<f64>> = (0..graph.node_count() as NodeId)
        .into_par_iter()
        .map(|u| {
            let n = graph.node_count();
            let mut total = vec![0.0f64; n];
            let mut current = vec![0.0f64; n];
            if graph.degree(u) > 0 {
                current[u as usize] = 1.0;
            }
            for t in 0..=k {
                if t > 0 {
                    let mut next = vec![0.0f64; n];
                    for (x, &p) in current.iter().enumerate() {
                        if p == 0.0 {
                            continue;
                        }
                        let share = p / graph.degree(x as NodeId) as f64;
                        for &(y, _) in graph.neighbors(x as NodeId) {
                            next[y as usize] += share;
                        }
                    }
                    current = next;
                }
                for (slot, &p) in total.iter_mut().zip(current.iter()) {
                    *slot += p;
                }
            }
            total
        })
        .collect();
    let mut scores = PairScores::new();
    for (u, v) in graph.nonadjacent_pairs() {
        let value = degree_weight(graph, u) * summed[u as usize][v as usize]
            + degree_weight(graph, v) * summed[v as usize][u as usize];
        if value != 0.0 {
            scores.set(u, v, value);
        }
    }
    Ok(scores)
}
