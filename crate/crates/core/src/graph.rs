//! Undirected weighted graph with dense integer node ids, edge-list I/O,
//! preferential-attachment generation, and the random edge-removal step of
//! the evaluation protocol.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type NodeId = u32;

/// Master seed plus a stream index, so independent trials and workers can
/// derive non-colliding RNG streams without coordination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSeed {
    pub master: u64,
    pub stream: u32,
}

impl RandomSeed {
    pub fn new(master: u64) -> Self {
        Self { master, stream: 0 }
    }

    pub fn stream(self, stream: u32) -> Self {
        Self { master: self.master, stream }
    }

    /// SplitMix64 finalizer over `master + PHI * (stream + 1)`. The odd
    /// multiplier keeps distinct streams injective, so streams never collide.
    pub fn mix(self) -> u64 {
        const PHI: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut z = self
            .master
            .wrapping_add(PHI.wrapping_mul(self.stream as u64 + 1));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.mix())
    }
}

/// Immutable undirected weighted graph. Node labels map to dense ids in
/// first-appearance order; adjacency lists are sorted by neighbor id.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
    edge_count: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Accept a third per-line token as a positive edge weight.
    pub weighted: bool,
}

/// Non-fatal observations made while loading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    /// Lines that repeated an already-seen undirected edge (either direction).
    pub duplicate_edges: usize,
}

impl Graph {
    /// Builds a graph from explicit labels and undirected edges. Edges must be
    /// unique unordered pairs without self-loops; weights strictly positive.
    pub fn from_edges(labels: Vec<String>, edges: &[(NodeId, NodeId, f64)]) -> Result<Self> {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at node {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(format!("edge ({u},{v}) out of range")));
            }
            if w <= 0.0 {
                return Err(Error::InvalidParameter(format!("non-positive weight {w}")));
            }
            adjacency[u as usize].push((v, w));
            adjacency[v as usize].push((u, w));
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable_by_key(|&(v, _)| v);
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidParameter(format!("duplicate edge at node {u}")));
            }
        }
        Ok(Self { labels, adjacency, edge_count: edges.len() })
    }

    /// Convenience constructor for unweighted test graphs.
    pub fn unweighted(n: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::from_edges(labels, &weighted).expect("valid test graph")
    }

    /// Parses the `u v [w]` edge-list format. `#` starts a comment. Duplicate
    /// undirected edges (either orientation) are dropped and counted.
    pub fn load_edge_list(text: &str, options: LoadOptions) -> Result<(Self, LoadReport)> {
        let mut ids: HashMap<String, NodeId> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges: Vec<(NodeId, NodeId, f64)> = Vec::new();
        let mut seen: HashMap<(NodeId, NodeId), ()> = HashMap::new();
        let mut report = LoadReport::default();

        let intern = |token: &str, labels: &mut Vec<String>, ids: &mut HashMap<String, NodeId>| {
            *ids.entry(token.to_string()).or_insert_with(|| {
                labels.push(token.to_string());
                (labels.len() - 1) as NodeId
            })
        };

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let (u_tok, v_tok, weight) = match tokens.as_slice() {
                [u, v] => (*u, *v, 1.0),
                [u, v, w] if options.weighted => {
                    let w: f64 = w.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid weight '{w}'"),
                    })?;
                    (*u, *v, w)
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected 2{} tokens, found {}",
                            if options.weighted { " or 3" } else { "" },
                            tokens.len()),
                    })
                }
            };
            if u_tok == v_tok {
                return Err(Error::Parse { line: line_no, message: format!("self-loop '{u_tok}'") });
            }
            if weight <= 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("non-positive weight {weight}"),
                });
            }
            let u = intern(u_tok, &mut labels, &mut ids);
            let v = intern(v_tok, &mut labels, &mut ids);
            let key = (u.min(v), u.max(v));
            if seen.insert(key, ()).is_some() {
                report.duplicate_edges += 1;
                continue;
            }
            edges.push((u, v, weight));
        }
        Ok((Self::from_edges(labels, &edges)?, report))
    }

    /// One undirected edge per line in ascending `(id, id)` order.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        for u in 0..self.node_count() {
            for &(v, w) in &self.adjacency[u] {
                if (u as NodeId) < v {
                    if (w - 1.0).abs() < f64::EPSILON {
                        out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v as usize]));
                    } else {
                        out.push_str(&format!("{} {} {}\n", self.labels[u], self.labels[v as usize], w));
                    }
                }
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[u as usize]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u as usize].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u as usize].binary_search_by_key(&v, |&(x, _)| x).is_ok()
    }

    /// All undirected edges in ascending `(u, v)` order.
    pub fn edges(&self) -> Vec<(NodeId, NodeId, f64)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.node_count() {
            for &(v, w) in &self.adjacency[u] {
                if (u as NodeId) < v {
                    out.push((u as NodeId, v, w));
                }
            }
        }
        out
    }

    /// Every unordered non-adjacent pair `{u, v}` with `u != v`.
    pub fn nonadjacent_pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        let n = self.node_count() as NodeId;
        (0..n).flat_map(move |u| {
            (u + 1..n).filter_map(move |v| if self.has_edge(u, v) { None } else { Some((u, v)) })
        })
    }

    /// Removes `round(fraction * edge_count)` undirected edges uniformly at
    /// random without replacement. No connectivity repair is attempted;
    /// disconnected observed graphs are legal inputs everywhere downstream.
    pub fn remove_random_edges(
        &self,
        fraction: f64,
        seed: RandomSeed,
    ) -> Result<(Graph, Vec<(NodeId, NodeId)>)> {
        if self.edge_count == 0 {
            return Err(Error::InvalidParameter("cannot remove edges from an empty graph".into()));
        }
        if !(0.0..1.0).contains(&fraction) || fraction <= 0.0 {
            return Err(Error::InvalidParameter(format!("fraction {fraction} not in (0,1)")));
        }
        let count = (fraction * self.edge_count as f64).round() as usize;
        if count == 0 {
            return Err(Error::InvalidParameter(format!(
                "fraction {fraction} removes no edges from {} total",
                self.edge_count
            )));
        }
        let mut edges = self.edges();
        let mut rng = seed.rng();
        edges.shuffle(&mut rng);
        let missing: Vec<(NodeId, NodeId)> = edges[..count].iter().map(|&(u, v, _)| (u, v)).collect();
        let kept: Vec<(NodeId, NodeId, f64)> = edges[count..].to_vec();
        let observed = Graph::from_edges(self.labels.clone(), &kept)?;
        let mut missing = missing;
        missing.sort_unstable();
        Ok((observed, missing))
    }
}

/// Barabasi-Albert preferential attachment: a complete graph on `m0` nodes,
/// then each new node attaches `m` edges to distinct existing nodes chosen
/// with probability proportional to current degree.
pub fn generate_pa(n: usize, m0: usize, m: usize, seed: RandomSeed) -> Result<Graph> {
    if m < 1 || m > m0 || m0 > n {
        return Err(Error::InvalidParameter(format!(
            "preferential attachment requires 1 <= m <= m0 <= n, got n={n} m0={m0} m={m}"
        )));
    }
    let mut rng = seed.rng();
    let mut edges: Vec<(NodeId, NodeId, f64)> = Vec::new();
    // Each endpoint appears in `stubs` once per incident edge, so uniform
    // sampling from it is degree-proportional sampling.
    let mut stubs: Vec<NodeId> = Vec::new();
    for u in 0..m0 {
        for v in u + 1..m0 {
            edges.push((u as NodeId, v as NodeId, 1.0));
            stubs.push(u as NodeId);
            stubs.push(v as NodeId);
        }
    }
    for t in m0..n {
        let mut targets: Vec<NodeId> = Vec::with_capacity(m);
        while targets.len() < m {
            let candidate = stubs[rng.gen_range(0..stubs.len())];
            if !targets.contains(&candidate) {
                targets.push(candidate);
            }
        }
        for &v in &targets {
            edges.push((t as NodeId, v, 1.0));
            stubs.push(t as NodeId);
            stubs.push(v);
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Graph::from_edges(labels, &edges)
}
