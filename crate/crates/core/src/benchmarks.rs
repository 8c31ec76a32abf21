//! Wall-clock scaling measurements on preferential-attachment graphs.

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::eval::{score_method, MethodSpec};
use crate::graph::{generate_pa, RandomSeed};
use crate::neighborhood::build_neighborhood_table;

#[derive(Debug, Clone, Serialize)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub m0: usize,
    pub m: usize,
    pub methods: Vec<MethodSpec>,
    pub repeats: usize,
    /// Benchmarks run on graphs with this fraction of edges removed, matching
    /// the graphs the experiment protocol actually scores.
    pub removal_fraction: f64,
    pub master_seed: u64,
}

impl BenchConfig {
    pub fn new(sizes: Vec<usize>, m0: usize, m: usize, methods: Vec<MethodSpec>) -> Self {
        Self { sizes, m0, m, methods, repeats: 3, removal_fraction: 0.3, master_seed: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub k: f64,
    pub method: String,
    pub mean_ms: f64,
    /// Mean bounded-list size at this radius on the measured graphs.
    pub mean_v_k: f64,
    pub repeats: usize,
}

/// Times each configured method on fresh PA graphs (freshly removed edges per
/// repeat) and reports the measured V_k next to the milliseconds.
pub fn runtime_benchmark(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    let mut stream = 0u32;
    for &n in &config.sizes {
        for spec in &config.methods {
            let mut total_ms = 0.0f64;
            let mut total_vk = 0.0f64;
            for _ in 0..config.repeats.max(1) {
                let seed = RandomSeed::new(config.master_seed).stream(stream);
                stream += 2;
                let full = generate_pa(n, config.m0, config.m, seed)?;
                let (observed, _) = full
                    .remove_random_edges(config.removal_fraction, seed.stream(stream - 1))?;
                total_vk += build_neighborhood_table(&observed, spec.k)?.average_list_len();
                let start = Instant::now();
                let scores = score_method(&observed, spec)?;
                total_ms += start.elapsed().as_secs_f64() * 1e3;
                std::hint::black_box(scores.len());
            }
            let r = config.repeats.max(1) as f64;
            rows.push(BenchRow {
                n,
                k: spec.k,
                method: spec.label(),
                mean_ms: total_ms / r,
                mean_v_k: total_vk / r,
                repeats: config.repeats.max(1),
            });
        }
    }
    Ok(rows)
}

pub fn bench_rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,k,method,mean_ms,v_k,repeats\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{:.3},{:.4},{}\n",
            row.n, row.k, row.method, row.mean_ms, row.mean_v_k, row.repeats
        ));
    }
    out
}
