//! Exponential-time reference implementations of the interaction indices,
//! plus small-graph enumeration. These never share code with the fast kernels;
//! their agreement is the correctness gate for the whole crate.

use rand::Rng;

use crate::distance::{eval_f, DistanceFunction};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, RandomSeed};
use crate::interaction::SemivalueWeights;
use crate::sssp::bounded_sssp;

/// Node subsets above this size make permutation enumeration explode.
pub const DEFAULT_ENUMERATION_BOUND: usize = 9;

/// A transferable-utility game over node subsets encoded as bitmasks.
pub trait Game {
    fn node_count(&self) -> usize;
    fn value(&self, coalition: u64) -> f64;
}

fn all_pairs_distances(graph: &Graph) -> Vec<Vec<f64>> {
    let n = graph.node_count();
    let mut apsp = vec![vec![f64::INFINITY; n]; n];
    for u in 0..n as NodeId {
        // radius n exceeds any hop diameter; weights here are all >= some
        // positive value so n * max-weight would be needed in general — use
        // the sum of all weights as a safe unbounded radius.
        let radius: f64 = graph.edges().iter().map(|&(_, _, w)| w).sum::<f64>().max(1.0);
        let list = bounded_sssp(graph, u, radius).expect("valid source");
        for &(v, d) in &list.entries {
            apsp[u as usize][v as usize] = d;
        }
    }
    apsp
}

/// The generalized closeness game: value(S) = sum over v outside S of
/// f(dist(S, v)). Values for every subset are tabulated eagerly, so lookups
/// during enumeration are array reads.
pub struct ClosenessGame {
    n: usize,
    table: Vec<f64>,
}

impl ClosenessGame {
    pub fn new(graph: &Graph, f: DistanceFunction) -> Result<Self> {
        let n = graph.node_count();
        if n > DEFAULT_ENUMERATION_BOUND {
            return Err(Error::EnumerationBound { nodes: n, bound: DEFAULT_ENUMERATION_BOUND });
        }
        let apsp = all_pairs_distances(graph);
        let mut table = vec![0.0; 1usize << n];
        for (mask, slot) in table.iter_mut().enumerate().skip(1) {
            let mut total = 0.0;
            for v in 0..n {
                if mask & (1 << v) != 0 {
                    continue;
                }
                let mut d = f64::INFINITY;
                for s in 0..n {
                    if mask & (1 << s) != 0 && apsp[s][v] < d {
                        d = apsp[s][v];
                    }
                }
                total += eval_f(f, d);
            }
            *slot = total;
        }
        Ok(Self { n, table })
    }
}

impl Game for ClosenessGame {
    fn node_count(&self) -> usize {
        self.n
    }

    fn value(&self, coalition: u64) -> f64 {
        self.table[coalition as usize]
    }
}

/// The k-degree game: value(S) = number of nodes outside S within distance k
/// of S. A separate oracle for the indicator-f specialization.
pub struct KDegreeGame {
    n: usize,
    table: Vec<f64>,
}

impl KDegreeGame {
    pub fn new(graph: &Graph, k: f64) -> Result<Self> {
        let n = graph.node_count();
        if n > DEFAULT_ENUMERATION_BOUND {
            return Err(Error::EnumerationBound { nodes: n, bound: DEFAULT_ENUMERATION_BOUND });
        }
        let apsp = all_pairs_distances(graph);
        let mut table = vec![0.0; 1usize << n];
        for (mask, slot) in table.iter_mut().enumerate().skip(1) {
            let mut covered = 0usize;
            for v in 0..n {
                if mask & (1 << v) != 0 {
                    continue;
                }
                let reachable = (0..n)
                    .any(|s| mask & (1 << s) != 0 && apsp[s][v] <= k);
                if reachable {
                    covered += 1;
                }
            }
            *slot = covered as f64;
        }
        Ok(Self { n, table })
    }
}

impl Game for KDegreeGame {
    fn node_count(&self) -> usize {
        self.n
    }

    fn value(&self, coalition: u64) -> f64 {
        self.table[coalition as usize]
    }
}

/// Direct evaluation of the closeness value for one explicit node set.
pub fn group_closeness(graph: &Graph, members: &[NodeId], f: DistanceFunction) -> f64 {
    if members.is_empty() {
        return 0.0;
    }
    let n = graph.node_count();
    let mut best = vec![f64::INFINITY; n];
    for &s in members {
        let radius: f64 = graph.edges().iter().map(|&(_, _, w)| w).sum::<f64>().max(1.0);
        let list = bounded_sssp(graph, s, radius).expect("valid member");
        for &(v, d) in &list.entries {
            if d < best[v as usize] {
                best[v as usize] = d;
            }
        }
    }
    (0..n as NodeId)
        .filter(|v| !members.contains(v))
        .map(|v| eval_f(f, best[v as usize]))
        .sum()
}

/// value(C + {i,j}) - value(C + {i}) - value(C + {j}) + value(C).
pub fn synergy(game: &dyn Game, coalition: u64, i: NodeId, j: NodeId) -> Result<f64> {
    let (bi, bj) = (1u64 << i, 1u64 << j);
    if i == j || coalition & bi != 0 || coalition & bj != 0 {
        return Err(Error::InvalidParameter(format!(
            "pair ({i},{j}) must be two distinct nodes outside the coalition"
        )));
    }
    Ok(game.value(coalition | bi | bj) - game.value(coalition | bi) - game.value(coalition | bj)
        + game.value(coalition))
}

/// Exact Shapley interaction index of {s, t}: the average synergy over all
/// (n-1)! orderings of the player set with s and t merged into one player.
/// Permutations are enumerated literally (Heap's algorithm); only the
/// predecessor set of the merged player matters to each term.
pub fn brute_force_shapley_interaction(game: &dyn Game, s: NodeId, t: NodeId) -> Result<f64> {
    let n = game.node_count();
    if n > DEFAULT_ENUMERATION_BOUND {
        return Err(Error::EnumerationBound { nodes: n, bound: DEFAULT_ENUMERATION_BOUND });
    }
    if s == t || s as usize >= n || t as usize >= n {
        return Err(Error::InvalidParameter(format!("invalid pair ({s},{t})")));
    }
    // players: the merged pair is MERGED, everything else is its node id.
    const MERGED: NodeId = NodeId::MAX;
    let mut players: Vec<NodeId> = (0..n as NodeId).filter(|&v| v != s && v != t).collect();
    players.push(MERGED);
    let m = players.len();

    let mut total = 0.0;
    let mut count = 0u64;
    let mut term = |perm: &[NodeId]| {
        let mut coalition = 0u64;
        for &p in perm {
            if p == MERGED {
                break;
            }
            coalition |= 1 << p;
        }
        total += synergy(game, coalition, s, t).expect("pair outside coalition");
        count += 1;
    };

    // Heap's algorithm, iterative.
    let mut c = vec![0usize; m];
    term(&players);
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                players.swap(0, i);
            } else {
                players.swap(c[i], i);
            }
            term(&players);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    debug_assert_eq!(count, (1..=m as u64).product::<u64>());
    Ok(total / count as f64)
}

/// Exact semivalue interaction index: for each size c, average synergy over
/// all coalitions of that size drawn from the other n-2 nodes, weighted by
/// beta(c).
pub fn brute_force_semivalue_interaction(
    game: &dyn Game,
    s: NodeId,
    t: NodeId,
    w: &SemivalueWeights,
) -> Result<f64> {
    let n = game.node_count();
    if n > DEFAULT_ENUMERATION_BOUND {
        return Err(Error::EnumerationBound { nodes: n, bound: DEFAULT_ENUMERATION_BOUND });
    }
    if s == t || s as usize >= n || t as usize >= n {
        return Err(Error::InvalidParameter(format!("invalid pair ({s},{t})")));
    }
    if w.n != n {
        return Err(Error::InvalidParameter(format!(
            "weights are for {} players but the game has {n}",
            w.n
        )));
    }
    let others: Vec<NodeId> = (0..n as NodeId).filter(|&v| v != s && v != t).collect();
    let m = others.len();
    // binom(m, c) for averaging within each size class.
    let mut binom = vec![1.0f64; m + 1];
    for c in 1..=m {
        binom[c] = binom[c - 1] * (m - c + 1) as f64 / c as f64;
    }
    let mut total = 0.0;
    for subset in 0..(1u64 << m) {
        let mut coalition = 0u64;
        for (idx, &v) in others.iter().enumerate() {
            if subset & (1 << idx) != 0 {
                coalition |= 1 << v;
            }
        }
        let c = subset.count_ones() as usize;
        total += w.beta[c] * synergy(game, coalition, s, t)? / binom[c];
    }
    Ok(total)
}

/// Every connected labeled graph on exactly `n` nodes, by edge-subset
/// enumeration. Bounded at 6 nodes (26704 graphs); beyond that the labeled
/// count explodes into the hundreds of millions.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    const BOUND: usize = 6;
    if n == 0 || n > BOUND {
        return Err(Error::EnumerationBound { nodes: n, bound: BOUND });
    }
    let pairs: Vec<(NodeId, NodeId)> = (0..n as NodeId)
        .flat_map(|u| (u + 1..n as NodeId).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(NodeId, NodeId)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        if edges.len() + 1 < n {
            continue; // cannot be connected
        }
        let g = Graph::unweighted(n, &edges);
        if is_connected(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Deterministic random connected graphs on `n` nodes: a uniform spanning
/// tree skeleton plus each extra pair independently with probability `p`.
pub fn sample_connected_graphs(n: usize, count: usize, seed: RandomSeed) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    let mut stream = 0u32;
    while out.len() < count {
        let mut rng = seed.stream(stream).rng();
        stream += 1;
        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
        // random attachment tree keeps the graph connected by construction
        for v in 1..n as NodeId {
            let parent = rng.gen_range(0..v);
            edges.push((parent, v));
        }
        let p: f64 = rng.gen_range(0.1..0.6);
        for u in 0..n as NodeId {
            for v in u + 1..n as NodeId {
                if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        out.push(Graph::unweighted(n, &edges));
    }
    out
}

pub fn is_connected(graph: &Graph) -> bool {
    let n = graph.node_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0 as NodeId];
    seen[0] = true;
    let mut visited = 1;
    while let Some(u) = stack.pop() {
        for &(v, _) in graph.neighbors(u) {
            if !seen[v as usize] {
                seen[v as usize] = true;
                visited += 1;
                stack.push(v);
            }
        }
    }
    visited == n
}
