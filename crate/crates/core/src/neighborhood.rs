//! Per-node bounded distance lists with the cumulative neighborhood counts
//! that turn permutation/coalition counting into closed forms.

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::sssp::{bounded_sssp, BoundedDistanceList};

/// Distinct distances occurring in one node's bounded list (ascending) and the
/// cumulative count of nodes at distance <= each of them.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceCounts {
    pub distinct: Vec<f64>,
    pub cumulative_leq: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct NeighborhoodTable {
    pub radius_k: f64,
    pub node_count: usize,
    pub lists: Vec<BoundedDistanceList>,
    counts: Vec<DistanceCounts>,
}

impl NeighborhoodTable {
    pub fn list(&self, u: NodeId) -> &BoundedDistanceList {
        &self.lists[u as usize]
    }

    pub fn counts(&self, u: NodeId) -> &DistanceCounts {
        &self.counts[u as usize]
    }

    /// Nodes at distance <= d from u (u itself included at distance 0).
    pub fn nod_leq(&self, u: NodeId, d: f64) -> usize {
        let c = &self.counts[u as usize];
        match c.distinct.partition_point(|&x| x <= d) {
            0 => 0,
            i => c.cumulative_leq[i - 1],
        }
    }

    /// Nodes at distance strictly < d from u. Nodes outside the radius count
    /// as infinitely far, so they land in gt/geq only.
    pub fn nod_lt(&self, u: NodeId, d: f64) -> usize {
        let c = &self.counts[u as usize];
        match c.distinct.partition_point(|&x| x < d) {
            0 => 0,
            i => c.cumulative_leq[i - 1],
        }
    }

    pub fn nod_gt(&self, u: NodeId, d: f64) -> usize {
        self.node_count - self.nod_leq(u, d)
    }

    pub fn nod_geq(&self, u: NodeId, d: f64) -> usize {
        self.node_count - self.nod_lt(u, d)
    }

    /// Mean bounded-list size over nodes (source included): the V_k statistic.
    pub fn average_list_len(&self) -> f64 {
        let total: usize = self.lists.iter().map(|l| l.len()).sum();
        total as f64 / self.node_count as f64
    }
}

/// Runs bounded SSSP from every node and materializes the cumulative counts.
/// Per-source work is independent; results are assembled in node order, so the
/// table is identical regardless of thread count.
pub fn build_neighborhood_table(graph: &Graph, k: f64) -> Result<NeighborhoodTable> {
    let n = graph.node_count();
    let lists: Vec<BoundedDistanceList> = (0..n as NodeId)
        .into_par_iter()
        .map(|u| bounded_sssp(graph, u, k))
        .collect::<Result<_>>()?;
    let counts = lists
        .iter()
        .map(|list| {
            let mut distinct = Vec::new();
            let mut cumulative_leq = Vec::new();
            // entries are distance-descending; walk them in ascending order.
            let mut running = 0usize;
            for &(_, d) in list.entries.iter().rev() {
                running += 1;
                if distinct.last() == Some(&d) {
                    *cumulative_leq.last_mut().unwrap() = running;
                } else {
                    distinct.push(d);
                    cumulative_leq.push(running);
                }
            }
            DistanceCounts { distinct, cumulative_leq }
        })
        .collect();
    Ok(NeighborhoodTable { radius_k: k, node_count: n, lists, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::unweighted(3, &[(0, 1), (1, 2)])
    }

    #[test]
    fn path_center_counts() {
        let t = build_neighborhood_table(&path3(), 1.0).unwrap();
        assert_eq!(t.nod_leq(1, 1.0), 3);
        assert_eq!(t.nod_gt(1, 1.0), 0);
        assert_eq!(t.nod_lt(1, 1.0), 1);
    }

    #[test]
    fn path_end_counts() {
        let t = build_neighborhood_table(&path3(), 1.0).unwrap();
        assert_eq!(t.nod_leq(0, 1.0), 2);
        assert_eq!(t.nod_gt(0, 1.0), 1);
        assert_eq!(t.nod_geq(0, 1.0), 2);
    }

    #[test]
    fn count_identities_hold() {
        let g = crate::graph::generate_pa(60, 3, 2, crate::graph::RandomSeed::new(3)).unwrap();
        let t = build_neighborhood_table(&g, 2.0).unwrap();
        let n = g.node_count();
        for u in 0..n as NodeId {
            let c = t.counts(u).clone();
            assert!(t.nod_leq(u, 0.0) >= 1);
            for (i, &d) in c.distinct.iter().enumerate() {
                assert_eq!(t.nod_leq(u, d) + t.nod_gt(u, d), n);
                assert_eq!(t.nod_lt(u, d) + t.nod_geq(u, d), n);
                let exactly = t.lists[u as usize]
                    .entries
                    .iter()
                    .filter(|&&(_, x)| x == d)
                    .count();
                assert_eq!(t.nod_lt(u, d) + exactly, t.nod_leq(u, d));
                if i > 0 {
                    assert!(c.cumulative_leq[i] > c.cumulative_leq[i - 1]);
                }
            }
        }
    }

    #[test]
    fn average_list_len_is_mean_ball_size() {
        // path: end lists have 2 nodes within one hop, the center 3.
        let t = build_neighborhood_table(&path3(), 1.0).unwrap();
        assert!((t.average_list_len() - 7.0 / 3.0).abs() < 1e-12);
    }
}
