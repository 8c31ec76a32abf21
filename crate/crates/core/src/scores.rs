//! Sparse symmetric pair-score maps shared by every similarity method.

use std::collections::HashMap;

use crate::graph::{Graph, NodeId};

/// Scores over unordered node pairs; absent pairs read as 0. Higher score
/// means "more likely to be an edge" for every method in this crate.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairScores {
    map: HashMap<(NodeId, NodeId), f64>,
}

fn key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    debug_assert_ne!(u, v);
    (u.min(v), u.max(v))
}

impl PairScores {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, u: NodeId, v: NodeId) -> f64 {
        self.map.get(&key(u, v)).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, u: NodeId, v: NodeId, score: f64) {
        self.map.insert(key(u, v), score);
    }

    pub fn add(&mut self, u: NodeId, v: NodeId, delta: f64) {
        *self.map.entry(key(u, v)).or_insert(0.0) += delta;
    }

    pub fn merge(&mut self, other: PairScores) {
        for ((u, v), s) in other.map {
            *self.map.entry((u, v)).or_insert(0.0) += s;
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((NodeId, NodeId), f64)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }

    /// Stored pairs sorted descending by score, ties by ascending pair.
    pub fn sorted_entries(&self) -> Vec<((NodeId, NodeId), f64)> {
        let mut entries: Vec<_> = self.iter().collect();
        entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
        entries
    }

    /// CSV rendering: `label_u,label_v,score`, descending score then
    /// ascending label pair.
    pub fn to_csv(&self, graph: &Graph) -> String {
        let mut rows: Vec<(String, String, f64)> = self
            .iter()
            .map(|((u, v), s)| {
                let (a, b) = (graph.label(u).to_string(), graph.label(v).to_string());
                if a <= b {
                    (a, b, s)
                } else {
                    (b, a, s)
                }
            })
            .collect();
        rows.sort_by(|x, y| {
            y.2.partial_cmp(&x.2)
                .unwrap()
                .then_with(|| x.0.cmp(&y.0))
                .then_with(|| x.1.cmp(&y.1))
        });
        let mut out = String::from("label_u,label_v,score\n");
        for (a, b, s) in rows {
            out.push_str(&format!("{a},{b},{s}\n"));
        }
        out
    }
}
